"""Link-prediction recommendation workbench over typed data-lineage graphs."""

from .annotations import (
    Annotation,
    AnnotationStore,
    annotate,
    export_annotations_csv,
    import_annotations_csv,
)
from .errors import (
    ConsistencyError,
    IngestError,
    LineageRecError,
    NotFoundError,
    TrainingDivergedError,
)
from .features import (
    UNREACHABLE,
    FeatureTable,
    build_feature_matrix,
    compute_centrality,
    compute_communities,
    compute_degree,
    compute_features,
    read_features_csv,
    shortest_path_hops,
    write_features_csv,
)
from .gnn import (
    EmbeddingMatrix,
    LinkScore,
    TrainConfig,
    TrainingLog,
    evaluate_auc,
    load_embedding,
    save_embedding,
    score_all,
    score_pair,
    train,
)
from .graph import (
    AssetType,
    AssetTypes,
    EdgeRecord,
    LineageGraph,
    NodeRecord,
    get_node,
    ingest_graph,
    load_graph_dir,
    neighbors,
    write_graph_dir,
)
from .projection import Projection2D, project, read_projection_csv, write_projection_csv
from .recommend import (
    RecommendationRow,
    SampleSpec,
    build_recommendations,
    stratified_sample,
)
from .synth import SynthConfig, generate_graph, summarize

__version__ = "0.1.0"

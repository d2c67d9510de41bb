/** Entry point: one store, three panels, re-render on every transition. */

import { ApiClient } from "./api.js";
import { renderDataPanel } from "./render/table.js";
import { renderDetail } from "./render/detail.js";
import { renderOverview } from "./render/overview.js";
import { Store } from "./store.js";

export function mount(root: HTMLElement, store: Store): void {
  root.replaceChildren(
    header(store),
    section("data-panel"),
    section("overview-panel"),
    section("detail-panel"),
  );

  const rerender = () => {
    const active = document.activeElement instanceof HTMLElement ? document.activeElement.id : "";
    renderDataPanel(root.querySelector("#data-panel") as HTMLElement, store);
    renderOverview(root.querySelector("#overview-panel") as HTMLElement, store);
    renderDetail(root.querySelector("#detail-panel") as HTMLElement, store);
    if (active) {
      const el = document.getElementById(active);
      if (el instanceof HTMLInputElement) {
        const end = el.value.length;
        el.focus();
        el.setSelectionRange(end, end);
      }
    }
  };
  store.subscribe(rerender);
  rerender();
}

function header(store: Store): HTMLElement {
  const h = document.createElement("header");
  const title = document.createElement("h1");
  title.textContent = "Lineage recommendation workbench";
  const meta = document.createElement("span");
  meta.id = "meta-line";
  meta.textContent = store.meta
    ? `${store.meta.node_count} nodes · model ${store.meta.model_version}`
    : "";
  h.append(title, meta);
  return h;
}

function section(id: string): HTMLElement {
  const s = document.createElement("section");
  s.id = id;
  return s;
}

declare const process: { env?: Record<string, string> } | undefined;

// boot only in a real page, not under the test runner
if (typeof process === "undefined" || !process?.env?.VITEST) {
  const root = document.getElementById("app");
  if (root) {
    const store = new Store(new ApiClient());
    void store.init().then(() => mount(root, store));
  }
}

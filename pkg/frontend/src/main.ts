/**
 * Application entry point: wires the store, graph canvas, and result panels.
 *
 * The page expects the analysis service under the same origin (the Vite dev
 * server proxies /api to it; see vite.config.ts).
 */

import { ApiClient } from "./api";
import { GraphCanvas } from "./graphView";
import { renderErrorBar, renderEstimatePanel, renderImplicationsPanel } from "./panels";
import { LoopStore } from "./state";
import "./style.css";

function byId<T extends Element>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as unknown as T;
}

export function bootstrap(root: Document = document): LoopStore {
  const api = new ApiClient("");
  const store = new LoopStore(api);

  const canvas = new GraphCanvas(byId<SVGSVGElement>("graph-canvas"), store);
  const implicationsPanel = byId<HTMLElement>("implications-panel");
  const estimatePanel = byId<HTMLElement>("estimate-panel");
  const errorBar = byId<HTMLElement>("error-bar");
  const treatmentSelect = byId<HTMLSelectElement>("treatment-select");
  const outcomeSelect = byId<HTMLSelectElement>("outcome-select");
  const adjustmentInput = byId<HTMLInputElement>("adjustment-input");
  const overrideCheck = byId<HTMLInputElement>("override-check");
  const runImplications = byId<HTMLButtonElement>("run-implications");
  const runEstimate = byId<HTMLButtonElement>("run-estimate");

  let lastVariables = "";
  store.subscribe((state) => {
    canvas.render(state.graph);
    renderImplicationsPanel(implicationsPanel, state.implications, store);
    renderEstimatePanel(estimatePanel, state.estimate, store);
    renderErrorBar(errorBar, state.error);
    root.body.classList.toggle("busy", state.busy);
    const names = state.graph ? state.graph.variables.map((v) => v.name) : [];
    const key = names.join("|");
    if (key !== lastVariables) {
      lastVariables = key;
      for (const select of [treatmentSelect, outcomeSelect]) {
        select.replaceChildren();
        for (const name of names) {
          const opt = root.createElement("option");
          opt.value = name;
          opt.textContent = name;
          select.append(opt);
        }
      }
    }
  });

  runImplications.addEventListener("click", () => {
    void store.refreshImplications();
  });

  runEstimate.addEventListener("click", () => {
    const adjustmentText = adjustmentInput.value.trim();
    const adjustment = adjustmentText
      ? adjustmentText.split(",").map((s) => s.trim()).filter(Boolean)
      : null;
    void store.runEstimate({
      treatment: treatmentSelect.value,
      outcome: outcomeSelect.value,
      adjustment,
      override_adjustment: overrideCheck.checked,
      compare_unadjusted: true,
      seed: 0,
    });
  });

  void store.loadGraph().then(() => store.refreshImplications());
  return store;
}

if (typeof document !== "undefined" && document.getElementById("graph-canvas")) {
  bootstrap();
}

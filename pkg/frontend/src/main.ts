// Wiring: fixture picker, session lifecycle, click-to-reveal. All views are
// re-rendered from the last server payload; no inference happens here.

import { getRelation, listGraphs, revealAttribute, startSession } from "./api";
import {
  AppState,
  chooseSecret,
  decideReveal,
  failed,
  initialState,
  sessionLoaded,
  toggleSecret,
  viewArrived,
} from "./state";
import {
  renderBanner,
  renderErrorBanner,
  renderGoalPanel,
  renderGrid,
  renderNotice,
  renderRevealed,
} from "./render";

let state: AppState = initialState();

function el(id: string): HTMLElement {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found;
}

function draw(): void {
  el("error").innerHTML = renderErrorBanner(state.error);
  el("notice").innerHTML = renderNotice(state.notice);
  if (!state.relation || !state.view) {
    el("grid").innerHTML = "";
    el("revealed").innerHTML = "";
    el("banner").innerHTML = "";
    el("goals").innerHTML = "";
    return;
  }
  el("banner").innerHTML = renderBanner(state.view);
  el("grid").innerHTML = renderGrid(state.relation, state.view, {
    secretRow: state.secretRow,
    showSecret: state.showSecret,
  });
  el("revealed").innerHTML = renderRevealed(state.view);
  el("goals").innerHTML = renderGoalPanel(state.view);
  for (const button of el("grid").querySelectorAll<HTMLButtonElement>(".reveal-btn")) {
    button.addEventListener("click", () => {
      void onReveal(button.dataset.attribute ?? "");
    });
  }
  for (const row of el("grid").querySelectorAll<HTMLTableRowElement>("tr[data-row]")) {
    row.addEventListener("dblclick", () => {
      state = chooseSecret(state, row.dataset.row ?? null);
      draw();
    });
  }
}

async function onReveal(attribute: string): Promise<void> {
  const decision = decideReveal(state, attribute);
  state = decision.state;
  draw();
  if (decision.kind === "ignore" || !state.sessionId) return;
  try {
    const view = await revealAttribute(state.sessionId, attribute);
    state = viewArrived(state, view);
  } catch (error) {
    state = failed(state, `reveal failed: ${(error as Error).message}`);
  }
  draw();
}

async function onPick(graphId: string): Promise<void> {
  if (!graphId) return;
  try {
    const [relation, view] = await Promise.all([
      getRelation(graphId),
      startSession(graphId),
    ]);
    state = sessionLoaded(initialState(), relation, view);
  } catch (error) {
    state = failed(state, `could not start a session: ${(error as Error).message}`);
  }
  draw();
}

async function boot(): Promise<void> {
  const picker = el("picker") as HTMLSelectElement;
  try {
    const { graphs } = await listGraphs();
    picker.innerHTML =
      '<option value="">pick a fixture</option>' +
      graphs
        .map((g) => `<option value="${g.id}">${g.id} (${g.kind}) — ${g.title}</option>`)
        .join("");
  } catch (error) {
    state = failed(state, `service unreachable: ${(error as Error).message}`);
    draw();
    return;
  }
  picker.addEventListener("change", () => void onPick(picker.value));
  (el("secret-toggle") as HTMLInputElement).addEventListener("change", () => {
    state = toggleSecret(state);
    draw();
  });
  draw();
}

if (typeof document !== "undefined") {
  void boot();
}

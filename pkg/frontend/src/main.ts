/**
 * Browser entry point: wires the store, the API client and the DOM.
 */
import { ApiClient, StaleRevisionError } from "./api";
import {
  countsLine,
  renderCompare,
  renderCompareDisabled,
  renderMembershipChart,
  renderModelPanel,
  renderRankTable,
  renderTightest,
} from "./render";
import { ExplorerStore } from "./state";

const serviceUrl =
  new URLSearchParams(window.location.search).get("service") ??
  "http://127.0.0.1:8000";
const api = new ApiClient(serviceUrl);
const store = new ExplorerStore();

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function showError(message: string): void {
  el("error-banner").textContent = message;
  el("error-banner").classList.remove("hidden");
}

function clearError(): void {
  el("error-banner").classList.add("hidden");
}

async function loadModel(): Promise<void> {
  clearError();
  try {
    const [model, size] = await Promise.all([
      api.getModel(),
      api.getSpaceSize(),
    ]);
    store.loadModel(model, size.size);
    el("model-panel").innerHTML = renderModelPanel(
      store.summary!,
      size.size,
    );
    bindSliders();
  } catch (err) {
    showError(`Cannot reach the service at ${serviceUrl}: ${err}`);
  }
}

function bindSliders(): void {
  for (const input of el("model-panel").querySelectorAll<HTMLInputElement>(
    "input[data-goal]",
  )) {
    input.addEventListener("input", () => {
      store.setWeight(input.dataset.goal!, Number(input.value));
    });
  }
}

async function runQuery(): Promise<void> {
  if (!store.draft) return;
  if (!store.isDraftDirty() && store.lastOutcome) return; // nothing changed
  const budgetField = el("budget-input") as HTMLInputElement;
  store.setBudget(budgetField.value === "" ? null : Number(budgetField.value));
  const token = store.beginQuery();
  const outcome = await api.rank(store.draft);
  if (!store.acceptOutcome(token, outcome)) return; // a newer query won
  if (outcome.kind === "infeasible") {
    el("results-panel").innerHTML = renderTightest(outcome.document);
  } else {
    el("results-panel").innerHTML =
      `<p>${countsLine(outcome.document)}</p>` +
      renderRankTable(outcome.document);
  }
}

async function runCompare(): Promise<void> {
  if (!store.draft) return;
  try {
    const doc = await api.compare(store.draft);
    el("compare-panel").innerHTML = renderCompare(doc);
  } catch (err) {
    el("compare-panel").innerHTML = renderCompareDisabled(
      `Comparison unavailable: ${err}`,
    );
  }
}

async function drawMembership(level: string): Promise<void> {
  const xs = Array.from({ length: 61 }, (_, i) => i * 0.1);
  const points = await api.membershipCurve(level, xs);
  el("membership-panel").innerHTML = renderMembershipChart(points);
}

async function applyTactic(): Promise<void> {
  if (!store.tacticsEnabled) {
    showError("Model changed on the server; refresh before applying tactics.");
    return;
  }
  const tactic = (el("tactic-select") as HTMLSelectElement).value;
  const params = JSON.parse(
    (el("tactic-params") as HTMLTextAreaElement).value || "{}",
  );
  try {
    await api.applyTactic(tactic, params, store.revision);
    await loadModel();
  } catch (err) {
    if (err instanceof StaleRevisionError) {
      store.markStale(err.currentRevision);
      showError("Stale revision; reload the model and retry.");
    } else {
      showError(String(err));
    }
  }
}

el("run-button").addEventListener("click", () => void runQuery());
el("compare-button").addEventListener("click", () => void runCompare());
el("tactic-button").addEventListener("click", () => void applyTactic());
el("reload-button").addEventListener("click", () => void loadModel());
el("membership-select").addEventListener("change", (event) =>
  void drawMembership((event.target as HTMLSelectElement).value),
);

void loadModel();

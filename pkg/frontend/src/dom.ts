import { PHASE1_SCALE, PHASE2_RUBRIC } from "./rubric.js";
import { sentenceHtml } from "./render.js";
import { ScoreValues, SessionController, ViewState } from "./session.js";
import { PHASE2_METRICS } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function scaleGroup(
  doc: Document,
  name: keyof ScoreValues,
  min: number,
  max: number,
  selected: number | undefined,
  onPick: (field: keyof ScoreValues, value: number) => void,
): HTMLElement {
  const group = el(doc, "div", "scale");
  for (let v = min; v <= max; v++) {
    const label = el(doc, "label");
    const input = el(doc, "input") as HTMLInputElement;
    input.type = "radio";
    input.name = String(name);
    input.value = String(v);
    input.checked = selected === v;
    input.addEventListener("change", () => onPick(name, v));
    label.appendChild(input);
    label.appendChild(doc.createTextNode(String(v)));
    group.appendChild(label);
  }
  return group;
}

/** Render the controller state into `root`; call on every state change. */
export function renderApp(doc: Document, root: HTMLElement, ctl: SessionController): void {
  const state: ViewState = ctl.state;
  root.textContent = "";

  const header = el(doc, "header");
  header.appendChild(el(doc, "h1", undefined, "Sentence scoring"));
  header.appendChild(el(doc, "span", "annotator", `annotator: ${ctl.annotatorId}`));
  root.appendChild(header);

  if (state.kind === "loading") {
    root.appendChild(el(doc, "p", "status", "loading…"));
    return;
  }

  if (state.kind === "fetch-error") {
    root.appendChild(el(doc, "p", "error", `could not reach the service: ${state.message}`));
    const retry = el(doc, "button", "retry", "retry");
    retry.addEventListener("click", () => void ctl.retry());
    root.appendChild(retry);
    return;
  }

  if (state.kind === "done") {
    root.appendChild(el(doc, "h2", undefined, "All tasks complete"));
    root.appendChild(
      el(doc, "p", "summary",
         `you submitted ${state.submitted} scores over ${state.stats.pool_size} sentences`));
    const counts = state.stats.counts[ctl.annotatorId] ?? {};
    const list = el(doc, "ul", "counts");
    for (const [metric, n] of Object.entries(counts)) {
      list.appendChild(el(doc, "li", undefined, `${metric}: ${n} records`));
    }
    root.appendChild(list);
    return;
  }

  const { task, values, fieldError, notice } = state;
  if (notice) root.appendChild(el(doc, "p", "notice", notice));
  root.appendChild(
    el(doc, "h2", undefined, `Task ${task.task_id} — phase ${task.phase}`));
  root.appendChild(sentenceHtml(doc, task.sentence));

  const form = el(doc, "section", "rubric");
  if (task.phase === 1) {
    const intro = el(doc, "p", undefined, "Rate the sentence overall:");
    form.appendChild(intro);
    const dl = el(doc, "dl");
    for (const level of PHASE1_SCALE) {
      dl.appendChild(el(doc, "dt", undefined, `${level.value} — ${level.label}`));
      dl.appendChild(el(doc, "dd", undefined, level.description));
    }
    form.appendChild(dl);
    form.appendChild(scaleGroup(doc, "overall", 1, 5, values.overall,
                                (f, v) => ctl.setValue(f, v)));
  } else {
    for (const metric of PHASE2_RUBRIC) {
      const block = el(doc, "div", `metric ${metric.key}`);
      block.appendChild(el(doc, "h3", undefined, metric.label));
      block.appendChild(el(doc, "p", undefined, metric.description));
      block.appendChild(scaleGroup(doc, metric.key, metric.min, metric.max,
                                   values[metric.key], (f, v) => ctl.setValue(f, v)));
      form.appendChild(block);
    }
  }
  root.appendChild(form);

  if (fieldError) {
    const where = fieldError.field ? `${fieldError.field}: ` : "";
    root.appendChild(el(doc, "p", "error field-error", `${where}${fieldError.message}`));
  }

  const submit = el(doc, "button", "submit", "submit") as HTMLButtonElement;
  submit.disabled = !ctl.isComplete();
  submit.addEventListener("click", () => void ctl.submit());
  root.appendChild(submit);

  const back = el(doc, "button", "back", "back") as HTMLButtonElement;
  back.addEventListener("click", () => {
    ctl.back();
  });
  root.appendChild(back);
}

export function mountApp(doc: Document, root: HTMLElement, ctl: SessionController): void {
  renderApp(doc, root, ctl);
}

/** Distinct phase-2 metric input groups currently rendered (used by tests). */
export function visibleMetricInputs(root: HTMLElement): number {
  return PHASE2_METRICS.filter(
    (metric) => root.querySelectorAll(`input[name=${metric}]`).length > 0,
  ).length;
}

/** Scenario designer: cast, affections, catalogs, and the start button.
 *
 * Sliders are bounded to the model's ranges, so out-of-range values are
 * impossible by construction; everything else mirrors the server's
 * validation codes so problems surface before the document is posted.
 */

import type { StorymoodApi } from "./api.js";
import { affectionGlyph } from "./faces.js";
import type {
  CatalogKindName,
  Diagnostic,
  ScenarioDocument,
} from "./types.js";

export const HAIR_STYLES = ["bald", "short", "long", "curly", "ponytail"] as const;
export const HAIR_COLORS = [
  "black",
  "brown",
  "blonde",
  "red",
  "gray",
  "white",
  "blue",
  "green",
] as const;

export const MIN_AGENTS = 2;
export const MAX_AGENTS = 4;

export interface DesignerAgent {
  name: string;
  hairStyle: string;
  hairColor: string;
  glasses: boolean;
}

export interface DesignerCatalogItem {
  name: string;
  value: number;
}

export interface DesignerIssue {
  severity: "error" | "warning";
  code: string;
  message: string;
}

const clampValence = (value: number) => Math.max(-5, Math.min(5, Math.round(value)));

/** Derive a document id token from a display name. */
export function slugify(name: string): string {
  let slug = name
    .toLowerCase()
    .replace(/[^a-z0-9_]+/g, "_")
    .replace(/^_+|_+$/g, "");
  if (!/^[a-z]/.test(slug)) slug = `a${slug}`;
  return slug.slice(0, 32);
}

export class DesignerModel {
  agents: DesignerAgent[] = [];
  /** Directed affection per agent-index pair "i|j"; unset pairs read 0. */
  private affections = new Map<string, number>();
  catalogs: Record<CatalogKindName, DesignerCatalogItem[]> = {
    events: [],
    objects: [],
    actions: [],
  };

  clear(): void {
    this.agents = [];
    this.affections = new Map();
    this.catalogs = { events: [], objects: [], actions: [] };
  }

  addAgent(name: string, avatar?: Partial<Omit<DesignerAgent, "name">>): number {
    this.agents.push({
      name,
      hairStyle: avatar?.hairStyle ?? "short",
      hairColor: avatar?.hairColor ?? "black",
      glasses: avatar?.glasses ?? false,
    });
    return this.agents.length - 1;
  }

  removeAgent(index: number): void {
    this.agents.splice(index, 1);
    const moved = new Map<string, number>();
    for (const [key, value] of this.affections) {
      const [from, to] = key.split("|").map(Number);
      if (from === index || to === index) continue;
      const shift = (i: number) => (i > index ? i - 1 : i);
      moved.set(`${shift(from)}|${shift(to)}`, value);
    }
    this.affections = moved;
  }

  affection(from: number, to: number): number {
    return this.affections.get(`${from}|${to}`) ?? 0;
  }

  setAffection(from: number, to: number, value: number): void {
    this.affections.set(`${from}|${to}`, clampValence(value));
  }

  addCatalogItem(kind: CatalogKindName, name: string, value: number): void {
    this.catalogs[kind].push({ name, value: clampValence(value) });
  }

  removeCatalogItem(kind: CatalogKindName, index: number): void {
    this.catalogs[kind].splice(index, 1);
  }

  slugs(): string[] {
    return this.agents.map((agent) => slugify(agent.name));
  }

  validate(): DesignerIssue[] {
    const issues: DesignerIssue[] = [];
    if (this.agents.length < MIN_AGENTS || this.agents.length > MAX_AGENTS) {
      issues.push({
        severity: "error",
        code: "AGENT_COUNT",
        message: `${this.agents.length} agents; expected ${MIN_AGENTS}..${MAX_AGENTS}`,
      });
    }
    this.agents.forEach((agent, i) => {
      if (!agent.name.trim()) {
        issues.push({
          severity: "error",
          code: "NAME_EMPTY",
          message: `agent ${i + 1} has no name`,
        });
      }
    });
    const names = this.agents.map((agent) => agent.name.trim().toLowerCase());
    names.forEach((name, i) => {
      if (name && names.indexOf(name) !== i) {
        issues.push({
          severity: "warning",
          code: "DUPLICATE_NAME",
          message: `duplicate name "${this.agents[i].name}"`,
        });
      }
    });
    const slugs = this.slugs();
    slugs.forEach((slug, i) => {
      if (this.agents[i].name.trim() && slugs.indexOf(slug) !== i) {
        issues.push({
          severity: "error",
          code: "DUPLICATE_ID",
          message: `names "${this.agents[slugs.indexOf(slug)].name}" and "${this.agents[i].name}" collide on id "${slug}"`,
        });
      }
    });
    for (const kind of ["events", "objects", "actions"] as const) {
      const ids = this.catalogs[kind].map((item) => slugify(item.name));
      ids.forEach((id, i) => {
        if (!this.catalogs[kind][i].name.trim()) {
          issues.push({
            severity: "error",
            code: "NAME_EMPTY",
            message: `${kind} entry ${i + 1} has no name`,
          });
        } else if (ids.indexOf(id) !== i) {
          issues.push({
            severity: "error",
            code: "DUPLICATE_ID",
            message: `duplicate ${kind} id "${id}"`,
          });
        }
      });
    }
    return issues;
  }

  /** The canonical scenario document: ids sorted, every directed pair present. */
  buildDocument(): ScenarioDocument {
    const slugs = this.slugs();
    const order = slugs
      .map((slug, index) => ({ slug, index }))
      .sort((a, b) => (a.slug < b.slug ? -1 : 1));
    const agents = order.map(({ slug, index }) => ({
      id: slug,
      name: this.agents[index].name,
      avatar: {
        hair_style: this.agents[index].hairStyle,
        hair_color: this.agents[index].hairColor,
        glasses: this.agents[index].glasses,
      },
    }));
    const affections = [];
    for (const from of order) {
      for (const to of order) {
        if (from.index === to.index) continue;
        affections.push({
          from: from.slug,
          to: to.slug,
          value: this.affection(from.index, to.index),
        });
      }
    }
    affections.sort((a, b) =>
      a.from === b.from ? (a.to < b.to ? -1 : 1) : a.from < b.from ? -1 : 1,
    );
    const catalog = (kind: CatalogKindName) =>
      this.catalogs[kind]
        .map((item) => ({ id: slugify(item.name), name: item.name, value: item.value }))
        .sort((a, b) => (a.id < b.id ? -1 : 1));
    return {
      version: 1,
      agents,
      affections,
      events: catalog("events"),
      objects: catalog("objects"),
      actions: catalog("actions"),
    };
  }

  loadDocument(doc: ScenarioDocument): void {
    this.agents = doc.agents.map((agent) => ({
      name: agent.name,
      hairStyle: agent.avatar.hair_style,
      hairColor: agent.avatar.hair_color,
      glasses: agent.avatar.glasses,
    }));
    const ids = doc.agents.map((agent) => agent.id);
    this.affections = new Map();
    for (const entry of doc.affections) {
      const from = ids.indexOf(entry.from);
      const to = ids.indexOf(entry.to);
      if (from >= 0 && to >= 0) this.setAffection(from, to, entry.value);
    }
    for (const kind of ["events", "objects", "actions"] as const) {
      this.catalogs[kind] = doc[kind].map((item) => ({ name: item.name, value: item.value }));
    }
  }
}

export interface DesignerCallbacks {
  onStart(doc: ScenarioDocument): void;
}

export class DesignerView {
  readonly model = new DesignerModel();

  constructor(
    private readonly root: HTMLElement,
    private readonly callbacks: DesignerCallbacks,
    private readonly api?: StorymoodApi,
  ) {}

  render(): void {
    this.root.innerHTML = "";
    this.root.append(
      this.renderPresets(),
      this.renderAgents(),
      this.renderAffections(),
      this.renderCatalog("events", "Events (desirability)"),
      this.renderCatalog("objects", "Objects (appeal)"),
      this.renderCatalog("actions", "Actions (plausibility)"),
      this.renderFooter(),
    );
  }

  private el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    attrs: Record<string, string> = {},
    text?: string,
  ): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
    if (text !== undefined) node.textContent = text;
    return node;
  }

  private renderPresets(): HTMLElement {
    const section = this.el("section", { class: "panel", "data-presets": "" });
    section.append(this.el("h2", {}, "Scenario designer"));
    if (!this.api) return section;
    const row = this.el("div", { class: "row" });
    const select = this.el("select", { "data-preset-select": "" });
    const load = this.el("button", { "data-preset-load": "" }, "Load preset");
    row.append(select, load);
    section.append(row);
    void this.api
      .listScenarios()
      .then((items) => {
        for (const item of items) {
          select.append(this.el("option", { value: item.name }, item.name));
        }
      })
      .catch(() => {
        row.remove();
      });
    load.addEventListener("click", () => {
      const name = (select as HTMLSelectElement).value;
      if (!name || !this.api) return;
      void this.api.getScenario(name).then((doc) => {
        this.model.loadDocument(doc);
        this.render();
      });
    });
    return section;
  }

  private renderAgents(): HTMLElement {
    const section = this.el("section", { class: "panel", "data-agents-editor": "" });
    section.append(this.el("h2", {}, `Cast (${MIN_AGENTS}..${MAX_AGENTS})`));
    this.model.agents.forEach((agent, index) => {
      const card = this.el("div", { class: "agent-editor", "data-agent-editor": String(index) });
      const name = this.el("input", {
        type: "text",
        value: agent.name,
        placeholder: "name",
        "data-agent-name": String(index),
      }) as HTMLInputElement;
      name.addEventListener("input", () => {
        this.model.agents[index].name = name.value;
      });

      const style = this.el("select", { "data-agent-hair-style": String(index) }) as HTMLSelectElement;
      for (const token of HAIR_STYLES) {
        style.append(this.el("option", { value: token }, token));
      }
      style.value = agent.hairStyle;
      style.addEventListener("change", () => {
        this.model.agents[index].hairStyle = style.value;
      });

      const color = this.el("select", { "data-agent-hair-color": String(index) }) as HTMLSelectElement;
      for (const token of HAIR_COLORS) {
        color.append(this.el("option", { value: token }, token));
      }
      color.value = agent.hairColor;
      color.addEventListener("change", () => {
        this.model.agents[index].hairColor = color.value;
      });

      const glassesLabel = this.el("label", {}, "glasses ");
      const glasses = this.el("input", {
        type: "checkbox",
        "data-agent-glasses": String(index),
      }) as HTMLInputElement;
      glasses.checked = agent.glasses;
      glasses.addEventListener("change", () => {
        this.model.agents[index].glasses = glasses.checked;
      });
      glassesLabel.append(glasses);

      const remove = this.el("button", { "data-agent-remove": String(index) }, "remove");
      remove.addEventListener("click", () => {
        this.model.removeAgent(index);
        this.render();
      });

      card.append(name, style, color, glassesLabel, remove);
      section.append(card);
    });
    const add = this.el("button", { "data-agent-add": "" }, "Add agent");
    if (this.model.agents.length >= MAX_AGENTS) add.setAttribute("disabled", "");
    add.addEventListener("click", () => {
      this.model.addAgent(`Agent ${this.model.agents.length + 1}`);
      this.render();
    });
    section.append(add);
    return section;
  }

  private renderAffections(): HTMLElement {
    const section = this.el("section", { class: "panel", "data-affections-editor": "" });
    section.append(this.el("h2", {}, "Affections (-5 hatred .. +5 love)"));
    this.model.agents.forEach((from, i) => {
      this.model.agents.forEach((to, j) => {
        if (i === j) return;
        const row = this.el("div", { class: "row affection-row" });
        const value = this.model.affection(i, j);
        row.append(
          this.el("span", { class: "pair" }, `${from.name || `#${i + 1}`} → ${to.name || `#${j + 1}`}`),
        );
        const slider = this.el("input", {
          type: "range",
          min: "-5",
          max: "5",
          step: "1",
          value: String(value),
          "data-affection": `${i}|${j}`,
        }) as HTMLInputElement;
        const gauge = this.el(
          "span",
          { class: "gauge", "data-affection-gauge": `${i}|${j}` },
          `${affectionGlyph(value + 5)} ${value}`,
        );
        slider.addEventListener("input", () => {
          const v = Number(slider.value);
          this.model.setAffection(i, j, v);
          gauge.textContent = `${affectionGlyph(v + 5)} ${v}`;
        });
        row.append(slider, gauge);
        section.append(row);
      });
    });
    return section;
  }

  private renderCatalog(kind: CatalogKindName, title: string): HTMLElement {
    const section = this.el("section", { class: "panel", "data-catalog-editor": kind });
    section.append(this.el("h2", {}, title));
    this.model.catalogs[kind].forEach((item, index) => {
      const row = this.el("div", { class: "row" });
      const name = this.el("input", {
        type: "text",
        value: item.name,
        "data-catalog-name": `${kind}:${index}`,
      }) as HTMLInputElement;
      name.addEventListener("input", () => {
        this.model.catalogs[kind][index].name = name.value;
      });
      const slider = this.el("input", {
        type: "range",
        min: "-5",
        max: "5",
        step: "1",
        value: String(item.value),
        "data-catalog-value": `${kind}:${index}`,
      }) as HTMLInputElement;
      const gauge = this.el("span", { class: "gauge" }, String(item.value));
      slider.addEventListener("input", () => {
        this.model.catalogs[kind][index].value = Number(slider.value);
        gauge.textContent = slider.value;
      });
      const remove = this.el("button", { "data-catalog-remove": `${kind}:${index}` }, "remove");
      remove.addEventListener("click", () => {
        this.model.removeCatalogItem(kind, index);
        this.render();
      });
      row.append(name, slider, gauge, remove);
      section.append(row);
    });
    const add = this.el("button", { "data-catalog-add": kind }, `Add ${kind.slice(0, -1)}`);
    add.addEventListener("click", () => {
      this.model.addCatalogItem(kind, "", 0);
      this.render();
    });
    section.append(add);
    return section;
  }

  private renderFooter(): HTMLElement {
    const footer = this.el("section", { class: "panel" });
    const issues = this.el("ul", { class: "issues", "data-issues": "" });
    const start = this.el("button", { class: "start", "data-start": "" }, "Start session");
    start.addEventListener("click", () => {
      const found = this.model.validate();
      this.showIssues(found);
      if (found.some((issue) => issue.severity === "error")) return;
      this.callbacks.onStart(this.model.buildDocument());
    });
    footer.append(issues, start);
    return footer;
  }

  showIssues(issues: DesignerIssue[]): void {
    const list = this.root.querySelector("[data-issues]");
    if (!list) return;
    list.innerHTML = "";
    for (const issue of issues) {
      const item = document.createElement("li");
      item.setAttribute("data-issue", issue.code);
      item.className = issue.severity;
      item.textContent = `${issue.severity}: ${issue.code} ${issue.message}`;
      list.append(item);
    }
  }

  /** Render server-side diagnostics from a rejected document. */
  showDiagnostics(diagnostics: Diagnostic[]): void {
    this.showIssues(
      diagnostics.map((d) => ({
        severity: d.severity === "warning" ? "warning" : "error",
        code: d.code,
        message: `${d.line}:${d.column} ${d.message}`,
      })),
    );
  }
}

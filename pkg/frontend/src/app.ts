/** Application shell: tabs for designer, map, and history, plus the
 * session lifecycle gluing the three views to the API. */

import { ApiError, type StorymoodApi } from "./api.js";
import { DesignerView } from "./designer.js";
import { HistoryView } from "./history_view.js";
import { MapView } from "./map_view.js";

type TabName = "designer" | "map" | "history";

export class App {
  readonly designer: DesignerView;
  readonly mapView: MapView;
  readonly historyView: HistoryView;
  private sessionId: string | null = null;
  private readonly sections: Record<TabName, HTMLElement>;
  private readonly tabs: Record<TabName, HTMLButtonElement>;

  constructor(
    private readonly api: StorymoodApi,
    root: HTMLElement,
  ) {
    root.innerHTML = "";
    const nav = document.createElement("nav");
    this.tabs = {} as Record<TabName, HTMLButtonElement>;
    this.sections = {} as Record<TabName, HTMLElement>;
    for (const name of ["designer", "map", "history"] as const) {
      const button = document.createElement("button");
      button.setAttribute("data-tab", name);
      button.textContent = name;
      button.addEventListener("click", () => this.show(name));
      nav.append(button);
      this.tabs[name] = button;

      const section = document.createElement("section");
      section.setAttribute("data-view", name);
      section.setAttribute("hidden", "");
      this.sections[name] = section;
    }
    root.append(nav, this.sections.designer, this.sections.map, this.sections.history);

    this.designer = new DesignerView(
      this.sections.designer,
      { onStart: (doc) => void this.startSession(doc) },
      api,
    );
    this.mapView = new MapView(this.sections.map, api, {
      onUpdate: (map) => void this.historyView.refresh(map),
    });
    this.historyView = new HistoryView(this.sections.history, api, {
      onUndo: () => void this.undo(),
    });

    this.designer.model.addAgent("Agent 1");
    this.designer.model.addAgent("Agent 2");
    this.designer.render();
    this.historyView.render();
    this.show("designer");
  }

  show(tab: TabName): void {
    for (const name of ["designer", "map", "history"] as const) {
      if (name === tab) {
        this.sections[name].removeAttribute("hidden");
        this.tabs[name].classList.add("active");
      } else {
        this.sections[name].setAttribute("hidden", "");
        this.tabs[name].classList.remove("active");
      }
    }
  }

  private async startSession(doc: Parameters<StorymoodApi["createSession"]>[0]): Promise<void> {
    const result = await this.api.createSession(doc);
    if (!result.ok) {
      this.designer.showDiagnostics(result.diagnostics);
      return;
    }
    this.sessionId = result.sessionId;
    this.mapView.setSession(result.sessionId, result.map);
    this.historyView.setSession(result.sessionId);
    await this.historyView.refresh(result.map);
    this.show("map");
  }

  private async undo(): Promise<void> {
    if (!this.sessionId) return;
    try {
      const result = await this.api.undo(this.sessionId);
      this.mapView.update(result);
    } catch (error) {
      if (!(error instanceof ApiError && error.status === 409)) throw error;
    }
  }
}

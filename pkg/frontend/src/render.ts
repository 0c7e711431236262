/** DOM renderer: rebuilds the view from the store on every change. */

import { AppStore } from "./state.js";
import type { ResultRow, Suggestion } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function button(label: string, onClick: () => void, cls = ""): HTMLButtonElement {
  const node = el("button", { class: cls }, label);
  node.addEventListener("click", onClick);
  return node;
}

function searchPanel(store: AppStore): HTMLElement {
  const input = el("input", {
    id: "search-box",
    type: "text",
    placeholder: 'e.g. gold nanorobotics and not survey',
    value: store.searchBox,
  });
  input.value = store.searchBox;
  input.addEventListener("input", () => (store.searchBox = input.value));
  input.addEventListener("keydown", (ev) => {
    if (ev.key === "Enter") void store.submitSearch();
  });
  const panel = el(
    "div",
    { class: "search-panel" },
    input,
    button(store.busy ? "Searching…" : "Search", () => void store.submitSearch()),
  );
  if (store.parseProblem) {
    const { message, position } = store.parseProblem;
    panel.append(
      el("div", { class: "error" }, `Query error at position ${position ?? "?"}: ${message}`),
    );
  }
  if (store.errorBanner) panel.append(el("div", { class: "error" }, store.errorBanner));
  if (store.partialBanner) panel.append(el("div", { class: "banner" }, store.partialBanner));
  return panel;
}

function resultRow(store: AppStore, row: ResultRow): HTMLElement {
  const label = store.labelOf(row);
  const mark = (value: "relevant" | "irrelevant") =>
    button(
      value,
      () => void store.setLabel(row, value),
      `label-btn ${label === value ? "active " + value : ""}`,
    );
  return el(
    "li",
    { class: `result ${label ?? ""}`, "data-key": `${row.provider}:${row.doc_id}` },
    el("div", { class: "result-head" },
      el("span", { class: "rank" }, String(row.rank)),
      el("strong", {}, row.title || "(untitled)"),
      el("span", { class: "source" }, `${row.provider}:${row.doc_id}`),
      el("span", { class: "score" }, row.score.toFixed(3)),
    ),
    el("p", { class: "abstract" }, row.abstract.slice(0, 360)),
    el("div", { class: "label-buttons" }, mark("relevant"), mark("irrelevant")),
  );
}

function suggestionColumn(
  store: AppStore,
  heading: string,
  items: Suggestion[],
): HTMLElement {
  const list = el("ul", { class: "suggestion-list" });
  for (const s of items) {
    list.append(
      el(
        "li",
        {},
        button(`${s.term} (z=${s.z_score.toFixed(2)})`, () => store.clickSuggestion(s), "suggestion"),
      ),
    );
  }
  return el("div", { class: "suggestion-column" }, el("h3", {}, heading), list);
}

function resultsSection(store: AppStore): HTMLElement {
  const section = el("section", { class: "results" });
  if (!store.currentQuery) return section;
  section.append(
    el(
      "div",
      { class: "results-meta" },
      `${store.currentQuery.total} results for "${store.currentQuery.query}"`,
      button("re-order by my labels", () => void store.reorder()),
      button("suggest next query", () => void store.openSuggestionPanel()),
    ),
  );
  const list = el("ul", { class: "result-list" });
  for (const row of store.results) list.append(resultRow(store, row));
  section.append(list);
  if (store.results.length < store.currentQuery.total) {
    section.append(button("load more", () => void store.loadMore()));
  }
  if (store.suggestionsHint) {
    section.append(el("div", { class: "banner" }, store.suggestionsHint));
  }
  if (store.suggestions) {
    section.append(
      el(
        "div",
        { class: "suggestion-panel" },
        suggestionColumn(store, "add to query", store.addSuggestions()),
        suggestionColumn(store, "exclude from query", store.removeSuggestions()),
      ),
    );
  }
  return section;
}

function projectList(store: AppStore): HTMLElement {
  const nameInput = el("input", { type: "text", placeholder: "new project name" });
  const section = el(
    "section",
    { class: "projects" },
    el("h2", {}, "Projects"),
    el("div", {},
      nameInput,
      button("create", () => {
        if (nameInput.value.trim()) {
          void store.createProject(nameInput.value.trim()).then(() => store.openProjectList());
        }
      }),
    ),
  );
  const list = el("ul", { class: "project-list" });
  for (const p of store.projects) {
    const stats = p.statistics;
    list.append(
      el(
        "li",
        {},
        button(p.name, () => store.openProject(p.project_id), "project-link"),
        el(
          "span",
          { class: "stats" },
          ` ${stats.query_count} queries, ${stats.relevant_count}+ / ${stats.irrelevant_count}-`,
        ),
      ),
    );
  }
  section.append(list);
  return section;
}

export function render(store: AppStore, root: HTMLElement): void {
  root.replaceChildren();
  const active = store.projects.find((p) => p.project_id === store.activeProjectId);
  root.append(
    el(
      "header",
      {},
      el("h1", {}, "projsearch"),
      el(
        "nav",
        {},
        button("quick search", () => store.openQuickSearch()),
        button("projects", () => void store.openProjectList()),
      ),
      el(
        "span",
        { class: "context" },
        store.screen === "project-view" && active
          ? `project: ${active.name}`
          : "one-time search (no personalization)",
      ),
    ),
  );
  if (store.screen === "project-list") {
    root.append(projectList(store));
    return;
  }
  root.append(searchPanel(store), resultsSection(store));
}

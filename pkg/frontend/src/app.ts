/**
 * The playground controller: one text input, live-updating algebra
 * expression (linear or tree form), a data panel for whichever node is
 * selected, and a browser for the source relations.
 *
 * Every table shown comes verbatim from the service response; the UI
 * never evaluates anything itself. At most one query request is in
 * flight: a newer edit supersedes an older response via sequence
 * numbers. After each view refresh the container dispatches
 * "querylab:rendered", "querylab:error" or "querylab:selected" so
 * tests (and embedders) can await updates.
 */

import {
  fetchRelations,
  nodeAt,
  pathKey,
  postQuery,
  QueryErrorInfo,
  QuerySuccess,
  RelationsDoc,
  TreeNode,
} from './api.js';
import { renderLinear } from './linear.js';

export interface UiState {
  sqlText: string;
  optimizeEnabled: boolean;
  treeViewEnabled: boolean;
  selectedPath: number[] | null;
  lastResponse: QuerySuccess | null;
  error: QueryErrorInfo | null;
}

const SKELETON = `
  <div class="layout">
    <main class="work-area">
      <input id="sql-input" type="text" spellcheck="false" autocomplete="off"
             placeholder="SELECT Patient.name FROM Doctor JOIN Patient ON Doctor.id = Patient.doctorId" />
      <div class="toggles">
        <label><input type="checkbox" id="optimize-toggle" /> optimize</label>
        <label><input type="checkbox" id="tree-toggle" /> tree view</label>
      </div>
      <div id="error-banner" hidden></div>
      <section id="expression-linear" class="expression-view"></section>
      <section id="expression-tree" class="expression-view" hidden></section>
      <section id="trace" hidden></section>
      <section id="data" hidden>
        <h3 id="data-title"></h3>
        <div id="data-table"></div>
      </section>
    </main>
    <aside id="relation-browser">
      <h3>Relations</h3>
      <div id="relation-list"></div>
    </aside>
  </div>
`;

export class PlaygroundApp {
  readonly state: UiState = {
    sqlText: '',
    optimizeEnabled: false,
    treeViewEnabled: false,
    selectedPath: null,
    lastResponse: null,
    error: null,
  };

  private requestSeq = 0;
  private debounceTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly container: HTMLElement,
    private readonly baseUrl = '',
    private readonly debounceMs = 300,
  ) {}

  async init(): Promise<void> {
    this.container.innerHTML = SKELETON;
    this.element<HTMLInputElement>('#sql-input').addEventListener('input', (event) => {
      this.onSqlChanged((event.target as HTMLInputElement).value);
    });
    this.element<HTMLInputElement>('#optimize-toggle').addEventListener('change', (event) => {
      this.onOptimizeToggled((event.target as HTMLInputElement).checked);
    });
    this.element<HTMLInputElement>('#tree-toggle').addEventListener('change', (event) => {
      this.onTreeToggled((event.target as HTMLInputElement).checked);
    });
    await this.loadRelations();
  }

  /** Debounced live update; an empty input clears the view, no request. */
  onSqlChanged(text: string): void {
    this.state.sqlText = text;
    if (this.debounceTimer !== null) {
      clearTimeout(this.debounceTimer);
      this.debounceTimer = null;
    }
    if (text.trim() === '') {
      this.requestSeq += 1; // supersede anything in flight
      this.state.lastResponse = null;
      this.state.error = null;
      this.state.selectedPath = null;
      this.renderAll();
      this.emit('querylab:rendered');
      return;
    }
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.submit();
    }, this.debounceMs);
  }

  /** Re-runs the current query with the new optimize flag. */
  onOptimizeToggled(enabled: boolean): void {
    this.state.optimizeEnabled = enabled;
    if (this.state.sqlText.trim() !== '') {
      void this.submit();
    }
  }

  /** Pure view switch between linear and tree renderings. */
  onTreeToggled(enabled: boolean): void {
    this.state.treeViewEnabled = enabled;
    this.element('#expression-linear').hidden = enabled;
    this.element('#expression-tree').hidden = !enabled;
    this.emit('querylab:rendered');
  }

  /** Highlights the node and shows its rows; data comes from the response. */
  onNodeClicked(path: number[]): void {
    if (this.state.lastResponse === null) {
      return;
    }
    this.state.selectedPath = path;
    this.updateHighlights();
    this.renderDataPanel();
    this.emit('querylab:selected');
  }

  private async submit(): Promise<void> {
    const seq = ++this.requestSeq;
    try {
      const response = await postQuery(this.baseUrl, this.state.sqlText, this.state.optimizeEnabled);
      if (seq !== this.requestSeq) {
        return; // superseded by a newer edit
      }
      if (response.ok) {
        this.state.lastResponse = response;
        this.state.error = null;
        this.state.selectedPath = [];
        this.renderAll();
        this.emit('querylab:rendered');
      } else {
        this.state.error = response.error;
        this.renderError();
        this.emit('querylab:error');
      }
    } catch (error) {
      if (seq !== this.requestSeq) {
        return;
      }
      this.state.error = { kind: 'network', message: String(error) };
      this.renderError();
      this.emit('querylab:error');
    }
  }

  private async loadRelations(): Promise<void> {
    const list = this.element('#relation-list');
    try {
      const doc = await fetchRelations(this.baseUrl);
      this.renderRelations(doc);
    } catch {
      list.innerHTML = '';
      const note = document.createElement('p');
      note.textContent = 'Could not load relations.';
      const retry = document.createElement('button');
      retry.id = 'relations-retry';
      retry.textContent = 'Retry';
      retry.addEventListener('click', () => void this.loadRelations());
      list.append(note, retry);
    }
  }

  // -- rendering

  private renderAll(): void {
    const response = this.state.lastResponse;
    const linear = this.element('#expression-linear');
    const tree = this.element('#expression-tree');
    const trace = this.element('#trace');
    const data = this.element('#data');
    this.element('#error-banner').hidden = true;
    for (const section of [linear, tree, data]) {
      section.classList.remove('stale');
    }
    linear.innerHTML = '';
    tree.innerHTML = '';
    trace.innerHTML = '';
    if (response === null) {
      trace.hidden = true;
      data.hidden = true;
      return;
    }
    linear.appendChild(renderLinear(response.tree, (path) => this.onNodeClicked(path)));
    tree.appendChild(this.buildTree(response.tree));
    linear.hidden = this.state.treeViewEnabled;
    tree.hidden = !this.state.treeViewEnabled;
    this.renderTrace();
    data.hidden = false;
    this.updateHighlights();
    this.renderDataPanel();
  }

  private renderError(): void {
    const banner = this.element('#error-banner');
    const error = this.state.error;
    if (error === null) {
      banner.hidden = true;
      return;
    }
    const position = error.position
      ? ` (line ${error.position.line}, column ${error.position.column})`
      : '';
    banner.textContent = `${error.kind}: ${error.message}${position}`;
    banner.hidden = false;
    for (const id of ['#expression-linear', '#expression-tree', '#data']) {
      this.element(id).classList.add('stale');
    }
  }

  private renderTrace(): void {
    const trace = this.element('#trace');
    const steps = this.state.lastResponse?.trace ?? [];
    trace.hidden = steps.length === 0;
    if (steps.length === 0) {
      return;
    }
    const heading = document.createElement('h4');
    heading.textContent = 'Rewrites applied';
    const list = document.createElement('ol');
    for (const step of steps) {
      const item = document.createElement('li');
      item.textContent = `${step.rule} at "${pathKey(step.path)}"`;
      list.appendChild(item);
    }
    trace.append(heading, list);
  }

  private buildTree(node: TreeNode): HTMLElement {
    const list = document.createElement('ul');
    list.className = 'tree';
    list.appendChild(this.buildTreeItem(node));
    return list;
  }

  private buildTreeItem(node: TreeNode): HTMLElement {
    const item = document.createElement('li');
    const button = document.createElement('button');
    button.type = 'button';
    button.className = `tree-node tree-${node.kind}`;
    button.dataset.path = pathKey(node.path);
    button.dataset.kind = node.kind;
    button.textContent =
      node.cardinality === undefined ? node.label : `${node.label} (${node.cardinality} rows)`;
    button.addEventListener('click', () => this.onNodeClicked(node.path));
    item.appendChild(button);
    if (node.children.length > 0) {
      const children = document.createElement('ul');
      for (const child of node.children) {
        children.appendChild(this.buildTreeItem(child));
      }
      item.appendChild(children);
    }
    return item;
  }

  private renderDataPanel(): void {
    const response = this.state.lastResponse;
    if (response === null) {
      return;
    }
    const path = this.state.selectedPath ?? [];
    const result = nodeAt(response.nodes, path);
    const label = findTreeNode(response.tree, path)?.label ?? '';
    if (result === undefined) {
      return;
    }
    this.element('#data-title').textContent =
      `${label} (${result.cardinality} ${result.cardinality === 1 ? 'row' : 'rows'})`;
    const table = document.createElement('table');
    const head = table.createTHead().insertRow();
    for (const column of result.schema) {
      const cell = document.createElement('th');
      cell.textContent = `${column.qualifier}.${column.attribute}`;
      head.appendChild(cell);
    }
    const body = table.createTBody();
    for (const row of result.rows) {
      const tr = body.insertRow();
      for (const value of row) {
        tr.insertCell().textContent = String(value);
      }
    }
    const holder = this.element('#data-table');
    holder.innerHTML = '';
    holder.appendChild(table);
  }

  private renderRelations(doc: RelationsDoc): void {
    const list = this.element('#relation-list');
    list.innerHTML = '';
    for (const relation of doc.relations) {
      const block = document.createElement('details');
      block.open = true;
      block.className = 'relation';
      block.dataset.relation = relation.name;
      const summary = document.createElement('summary');
      summary.textContent = `${relation.name} (${relation.rows.length} rows)`;
      block.appendChild(summary);

      const table = document.createElement('table');
      const head = table.createTHead().insertRow();
      for (const attribute of relation.attributes) {
        const cell = document.createElement('th');
        cell.append(`${attribute.name}`);
        const fk = doc.foreign_keys.find(
          (edge) =>
            edge.from_relation === relation.name && edge.from_attribute === attribute.name,
        );
        if (fk) {
          const badge = document.createElement('span');
          badge.className = 'fk-badge';
          badge.title = `references ${fk.to_relation}.${fk.to_attribute}`;
          badge.textContent = 'FK';
          cell.appendChild(badge);
        }
        head.appendChild(cell);
      }
      const body = table.createTBody();
      for (const row of relation.rows) {
        const tr = body.insertRow();
        for (const value of row) {
          tr.insertCell().textContent = String(value);
        }
      }
      block.appendChild(table);
      list.appendChild(block);
    }
  }

  private updateHighlights(): void {
    const selected = this.state.selectedPath === null ? null : pathKey(this.state.selectedPath);
    for (const node of this.container.querySelectorAll<HTMLElement>('[data-path]')) {
      node.classList.toggle('selected', selected !== null && node.dataset.path === selected);
    }
  }

  private element<T extends HTMLElement = HTMLElement>(selector: string): T {
    const found = this.container.querySelector<T>(selector);
    if (found === null) {
      throw new Error(`missing element ${selector}`);
    }
    return found;
  }

  private emit(name: string): void {
    this.container.dispatchEvent(new CustomEvent(name, { bubbles: true }));
  }
}

export function findTreeNode(tree: TreeNode, path: number[]): TreeNode | undefined {
  let node: TreeNode | undefined = tree;
  for (const index of path) {
    node = node?.children[index];
  }
  return node;
}

/** Typed client for the query service. */

export type CellValue = number | string;

export interface AttributeInfo {
  name: string;
  type: string;
}

export interface RelationInfo {
  name: string;
  attributes: AttributeInfo[];
  rows: CellValue[][];
}

export interface ForeignKeyInfo {
  from_relation: string;
  from_attribute: string;
  to_relation: string;
  to_attribute: string;
}

export interface RelationsDoc {
  relations: RelationInfo[];
  foreign_keys: ForeignKeyInfo[];
}

export interface TreeNode {
  kind: 'relation' | 'selection' | 'projection' | 'join' | 'cross';
  label: string;
  path: number[];
  cardinality?: number;
  children: TreeNode[];
}

export interface BoundColumnInfo {
  qualifier: string;
  attribute: string;
  type: string;
}

export interface NodeResult {
  path: number[];
  schema: BoundColumnInfo[];
  rows: CellValue[][];
  cardinality: number;
}

export interface TraceStep {
  rule: string;
  path: number[];
}

export interface QuerySuccess {
  ok: true;
  unicode: string;
  latex: string;
  tree: TreeNode;
  trace: TraceStep[];
  nodes: NodeResult[];
}

export interface QueryErrorInfo {
  kind: string;
  message: string;
  position?: { line: number; column: number };
}

export interface QueryFailure {
  ok: false;
  error: QueryErrorInfo;
}

export type QueryResponse = QuerySuccess | QueryFailure;

export async function fetchRelations(baseUrl: string): Promise<RelationsDoc> {
  const response = await fetch(`${baseUrl}/api/relations`);
  if (!response.ok) {
    throw new Error(`relations request failed: ${response.status}`);
  }
  return (await response.json()) as RelationsDoc;
}

export async function postQuery(
  baseUrl: string,
  sql: string,
  optimize: boolean,
): Promise<QueryResponse> {
  const response = await fetch(`${baseUrl}/api/query`, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify({ sql, optimize }),
  });
  if (!response.ok && response.status !== 400) {
    throw new Error(`query request failed: ${response.status}`);
  }
  return (await response.json()) as QueryResponse;
}

export function pathKey(path: number[]): string {
  return path.join('.');
}

export function nodeAt(nodes: NodeResult[], path: number[]): NodeResult | undefined {
  const key = pathKey(path);
  return nodes.find((node) => pathKey(node.path) === key);
}

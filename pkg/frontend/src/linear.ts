/**
 * Linear expression rendering with one clickable span per node.
 *
 * The service's tree JSON is walked to rebuild exactly the string it
 * reports as `unicode`; wrapping each node in its own span gives the
 * click targets that a flat string cannot. Labels carry the operator
 * glyph plus its subscript ("σ Doctor.departmentId = 1"), so the
 * subscript is everything after the first space.
 */

import { pathKey, TreeNode } from './api.js';

export type NodeClickHandler = (path: number[]) => void;

export function renderLinear(tree: TreeNode, onClick: NodeClickHandler): HTMLElement {
  const root = document.createElement('div');
  root.className = 'linear-expression';
  root.appendChild(buildSpan(tree, onClick));
  return root;
}

function buildSpan(node: TreeNode, onClick: NodeClickHandler): HTMLElement {
  const span = document.createElement('span');
  span.className = `expr-node expr-${node.kind}`;
  span.dataset.path = pathKey(node.path);
  span.dataset.kind = node.kind;
  span.addEventListener('click', (event) => {
    event.stopPropagation();
    onClick(node.path);
  });

  switch (node.kind) {
    case 'relation':
      span.append(node.label);
      break;
    case 'selection':
    case 'projection': {
      const glyph = node.kind === 'selection' ? 'σ' : 'π';
      span.append(`${glyph}_{${subscript(node.label)}}(`);
      span.appendChild(buildSpan(node.children[0], onClick));
      span.append(')');
      break;
    }
    case 'join': {
      appendOperand(span, node.children[0], onClick);
      span.append(` ⋈_{${subscript(node.label)}} `);
      appendOperand(span, node.children[1], onClick);
      break;
    }
    case 'cross': {
      appendOperand(span, node.children[0], onClick);
      span.append(' × ');
      appendOperand(span, node.children[1], onClick);
      break;
    }
  }
  return span;
}

function appendOperand(parent: HTMLElement, child: TreeNode, onClick: NodeClickHandler): void {
  const needsParens = child.kind === 'join' || child.kind === 'cross';
  if (needsParens) {
    parent.append('(');
  }
  parent.appendChild(buildSpan(child, onClick));
  if (needsParens) {
    parent.append(')');
  }
}

function subscript(label: string): string {
  const space = label.indexOf(' ');
  return space < 0 ? '' : label.slice(space + 1);
}

/** Small DOM construction helper; keeps the views free of innerHTML. */

type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    if (child == null) continue;
    node.append(typeof child === "string" ? document.createTextNode(child) : child);
  }
  return node;
}

/** scrollIntoView that tolerates environments without layout (jsdom). */
export function scrollTo(target: Element): void {
  (target as HTMLElement).scrollIntoView?.({ block: "nearest" });
}

export async function waitFor<T>(
  probe: () => T | null | undefined | false,
  what: string,
  timeoutMs = 10_000,
): Promise<T> {
  const start = Date.now();
  for (;;) {
    const result = probe();
    if (result) return result;
    if (Date.now() - start > timeoutMs) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

export function click(element: Element | null): void {
  if (!element) throw new Error("tried to click a missing element");
  (element as HTMLElement).click();
}

/** Sentence rendering: the `_@` markers are display-hidden and replaced by
 * per-character language styling, so annotators judge the mixed sentence,
 * not the markup. */

export const HOK_MARK = "_@";

export interface RenderedChar {
  char: string;
  lang: "HOK" | "ZH";
}

/** Parse a space-joined tagged sentence into per-character language cells. */
export function parseSentence(rendered: string): RenderedChar[] {
  const cells: RenderedChar[] = [];
  for (const token of rendered.split(" ")) {
    if (!token) continue;
    if (token.endsWith(HOK_MARK) && token.length === HOK_MARK.length + 1) {
      cells.push({ char: token.slice(0, -HOK_MARK.length), lang: "HOK" });
    } else if ([...token].length === 1) {
      cells.push({ char: token, lang: "ZH" });
    } else {
      throw new Error(`not a rendered character token: ${token}`);
    }
  }
  return cells;
}

export function charCount(rendered: string): number {
  return parseSentence(rendered).length;
}

/** Build the sentence as styled spans; one span per underlying character. */
export function sentenceHtml(doc: Document, rendered: string): HTMLElement {
  const box = doc.createElement("p");
  box.className = "sentence";
  for (const cell of parseSentence(rendered)) {
    const span = doc.createElement("span");
    span.textContent = cell.char;
    span.className = cell.lang === "HOK" ? "hok" : "zh";
    span.title = cell.lang === "HOK" ? "Hokkien" : "Mandarin";
    box.appendChild(span);
  }
  return box;
}

import { AnnotationApi } from "./api.js";
import { renderApp } from "./dom.js";
import { SessionController } from "./session.js";

function param(name: string, fallback: string): string {
  return new URLSearchParams(window.location.search).get(name) ?? fallback;
}

const api = new AnnotationApi(param("api", "http://127.0.0.1:8000"));
const annotator = param("annotator", "");

const root = document.getElementById("app") as HTMLElement;
if (!annotator) {
  root.textContent = "add ?annotator=YOUR_ID to the URL to begin";
} else {
  const ctl = new SessionController(api, annotator, () => renderApp(document, root, ctl));
  void ctl.start();
}

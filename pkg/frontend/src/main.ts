import { ApiClient } from "./api.js";
import { createApp } from "./annotator.js";

function boot(): void {
  const app = createApp(document, new ApiClient(""), window.sessionStorage);
  app.init();
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", boot);
} else {
  boot();
}

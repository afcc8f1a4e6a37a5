/** Page bootstrap: wire the API client, controller, and DOM together. */

import { ApiClient } from "./api.js";
import { ReviewApp } from "./app.js";
import { ReviewController } from "./controller.js";
import { escapeHtml } from "./html.js";

const root = document.getElementById("app");
if (root !== null) {
  const controller = new ReviewController(new ApiClient());
  new ReviewApp(root, controller);
  controller.init().catch((error: unknown) => {
    root.innerHTML = `<p class="message error">Could not reach the review
      API: ${escapeHtml(String(error))}</p>`;
  });
}

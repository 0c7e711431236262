/** Browser bootstrap: wire the store to the renderer against the API. */

import { ApiClient } from "./api.js";
import { render } from "./render.js";
import { AppStore } from "./state.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("api") ?? "http://127.0.0.1:8000";

const store = new AppStore(new ApiClient(baseUrl));
const root = document.getElementById("app");
if (!root) throw new Error("missing #app element");

store.subscribe(() => render(store, root));
render(store, root);

const name = params.get("name") ?? "web user";
void store.init(name).catch((err) => {
  root.replaceChildren(
    Object.assign(document.createElement("div"), {
      className: "error",
      textContent: `Cannot reach the service at ${baseUrl}: ${err}`,
    }),
  );
});

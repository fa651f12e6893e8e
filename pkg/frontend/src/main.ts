import { httpClient } from "./api.js";
import { mount } from "./app.js";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app container");
}
mount(root, httpClient());

import { HttpApi } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (root) {
  new App(new HttpApi(""), root);
}

import { defineConfig } from "vitest/config";

export default defineConfig({
  server: {
    proxy: {
      // the analysis service; start it with: causeway serve <workspace>
      "/api": "http://127.0.0.1:8787",
    },
  },
  test: {
    environment: "jsdom",
  },
});

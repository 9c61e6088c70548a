import { defineConfig } from "vitest/config";

// The python service mounts frontend/public at "/", so the build lands there.
// During `vite` dev the /api prefix proxies to a locally running service.
export default defineConfig({
  publicDir: false,
  build: {
    outDir: "public",
    emptyOutDir: true,
    target: "es2022",
  },
  server: {
    proxy: {
      "/api": "http://127.0.0.1:8321",
    },
  },
  test: {
    environment: "jsdom",
  },
});

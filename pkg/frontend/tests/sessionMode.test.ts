import { describe, expect, it } from "vitest";
import { SessionModeState, toggleSessionMode } from "../src/sessionMode.js";

const vrRuntime = { isSessionSupported: async (m: string) => m === "immersive-vr" };
const noVr = { isSessionSupported: async () => false };

describe("session mode toggle", () => {
  it("enters immersive when a runtime is available", async () => {
    const s = await toggleSessionMode({ mode: "desktop", notice: null }, vrRuntime);
    expect(s).toEqual({ mode: "immersive", notice: null });
  });

  it("toggle twice lands back in desktop with no notice", async () => {
    let s: SessionModeState = { mode: "desktop", notice: null };
    s = await toggleSessionMode(s, vrRuntime);
    s = await toggleSessionMode(s, vrRuntime);
    expect(s).toEqual({ mode: "desktop", notice: null });
  });

  it("no VR runtime stays in desktop with a visible notice", async () => {
    const s = await toggleSessionMode({ mode: "desktop", notice: null }, noVr);
    expect(s.mode).toBe("desktop");
    expect(s.notice).toMatch(/No VR runtime/);
  });

  it("missing navigator.xr behaves like an unavailable runtime", async () => {
    const s = await toggleSessionMode({ mode: "desktop", notice: null }, undefined);
    expect(s.mode).toBe("desktop");
    expect(s.notice).not.toBeNull();
  });
});

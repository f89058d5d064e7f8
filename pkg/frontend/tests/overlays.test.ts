import { describe, expect, it } from "vitest";
import { OverlayPayload } from "../src/coreBridge.js";
import { buildOverlayModel } from "../src/overlays.js";

const basePayload: OverlayPayload = {
  label: null,
  time_bar: { frame_count: 10, current: 3, progress: 0.5, target: 4 },
  perspective: "overview",
  selected_node: null,
};

describe("buildOverlayModel", () => {
  it("no hover means no label", () => {
    const model = buildOverlayModel(basePayload, null);
    expect(model.label).toBeNull();
  });

  it("labels are anchored to the screen center, always", () => {
    const model = buildOverlayModel(
      {
        ...basePayload,
        label: { kind: "node", ident: "K29", text: "K29", screen_center: true },
      },
      null,
    );
    expect(model.label).toEqual({ text: "K29", anchor: "center" });
  });

  it("rejects payloads that request off-center labels", () => {
    expect(() =>
      buildOverlayModel(
        {
          ...basePayload,
          label: { kind: "node", ident: "x", text: "x", screen_center: false },
        },
        null,
      ),
    ).toThrow(/center/);
  });

  it("time bar carries the scrub state for the pointer anchor", () => {
    const model = buildOverlayModel(basePayload, null);
    expect(model.timeBar).toEqual({
      frameCount: 10,
      current: 3,
      progress: 0.5,
      target: 4,
    });
  });

  it("single-frame graphs hide the time bar", () => {
    const model = buildOverlayModel(
      { ...basePayload, time_bar: { frame_count: 1, current: 0, progress: 0, target: 0 } },
      null,
    );
    expect(model.timeBar).toBeNull();
  });

  it("indicator direction passes through in detail", () => {
    const model = buildOverlayModel(
      { ...basePayload, perspective: "detail" },
      new Float32Array([0, 0.6, -0.8]),
    );
    expect(model.indicator).toEqual([0, 0.6000000238418579, -0.800000011920929]);
    expect(model.perspective).toBe("detail");
  });
});

/**
 * Overlay model: the detail label pinned to the center of the view
 * (text in the periphery distorts under the headset lenses), the time
 * bar anchored above the pointer ray, the green overview-indicator
 * arrow at the top of the view, and the camera-prop transform.
 */
import { OverlayPayload } from "./coreBridge.js";

export interface OverlayModel {
  /** non-null only while the core reports a hovered entity */
  label: { text: string; anchor: "center" } | null;
  /** drawn on top of the laser pointer while scrubbing is possible */
  timeBar: { frameCount: number; current: number; progress: number; target: number } | null;
  /** head-local direction for the arrow at the top of the view */
  indicator: [number, number, number] | null;
  perspective: "overview" | "detail";
}

export function buildOverlayModel(
  payload: OverlayPayload,
  indicator: Float32Array | null,
): OverlayModel {
  let label: OverlayModel["label"] = null;
  if (payload.label !== null) {
    if (!payload.label.screen_center) {
      throw new Error("labels may only be rendered at the screen center");
    }
    const extras = Object.entries(payload.label.extra ?? {})
      .map(([k, v]) => `${k}: ${v}`)
      .join("  ");
    label = {
      text: extras ? `${payload.label.text}  (${extras})` : payload.label.text,
      anchor: "center",
    };
  }
  const timeBar =
    payload.time_bar.frame_count > 1
      ? {
          frameCount: payload.time_bar.frame_count,
          current: payload.time_bar.current,
          progress: payload.time_bar.progress,
          target: payload.time_bar.target,
        }
      : null;
  return {
    label,
    timeBar,
    indicator:
      indicator === null ? null : [indicator[0], indicator[1], indicator[2]],
    perspective: payload.perspective,
  };
}

/** Render the model into simple DOM overlays (desktop + VR HUD quad). */
export function applyOverlayDom(model: OverlayModel, root: {
  label: HTMLElement;
  timeBar: HTMLElement;
  perspective: HTMLElement;
}): void {
  if (model.label) {
    root.label.textContent = model.label.text;
    root.label.style.display = "block";
    // center placement is an invariant, not a style choice
    root.label.style.left = "50%";
    root.label.style.top = "50%";
    root.label.style.transform = "translate(-50%, -50%)";
  } else {
    root.label.style.display = "none";
    root.label.textContent = "";
  }
  if (model.timeBar) {
    const { frameCount, current, progress, target } = model.timeBar;
    const filled = Math.round(((current + progress * (target - current)) /
      Math.max(frameCount - 1, 1)) * 100);
    root.timeBar.style.display = "block";
    root.timeBar.textContent = `frame ${current}${progress > 0 ? ` -> ${target}` : ""}`;
    root.timeBar.style.setProperty("--fill", `${filled}%`);
  } else {
    root.timeBar.style.display = "none";
  }
  root.perspective.textContent = model.perspective;
}

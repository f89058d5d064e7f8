/**
 * Desktop/immersive render-loop mode switch. Entering or leaving an
 * immersive session swaps only the camera source (mouse-look vs
 * headset pose); navigation state lives in the core and is never
 * reset by a toggle.
 */

export type RenderMode = "desktop" | "immersive";

export interface XrAvailability {
  isSessionSupported(mode: string): Promise<boolean>;
}

export interface SessionModeState {
  mode: RenderMode;
  notice: string | null;
}

export async function toggleSessionMode(
  state: SessionModeState,
  xr: XrAvailability | undefined,
): Promise<SessionModeState> {
  if (state.mode === "immersive") {
    return { mode: "desktop", notice: null };
  }
  const supported = xr !== undefined && (await xr.isSessionSupported("immersive-vr"));
  if (!supported) {
    return {
      mode: "desktop",
      notice: "No VR runtime available; staying in desktop mode.",
    };
  }
  return { mode: "immersive", notice: null };
}

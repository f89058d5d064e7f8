/**
 * Bindings from physical controls to core events. One VR controller is
 * enough to drive everything, and the desktop fallback reaches every
 * core event without any headset.
 */
import { CoreEvent, CoreEventKind, HoveredEntity, Quat, Vec3 } from "./coreBridge.js";

export interface VrControllerSample {
  axes: [number, number];           // track-pad / D-pad
  triggerPressed: boolean;
  sideButtonHeld: boolean;          // input-modification button
  position: Vec3;
  orientation: Quat;
  pointingAtIndicator: boolean;     // UI-side hit test of the arrow overlay
}

export interface VrHeadSample {
  position: Vec3;
  orientation: Quat;
}

export interface DesktopSample {
  keys: Set<string>;                // KeyboardEvent.key values, lowercase
  mouseClicked: boolean;
  lookOrientation: Quat;            // from mouse-look
  position: Vec3;
}

/** Entity currently under the ray, as last reported by the core. */
export type HoverSource = () => HoveredEntity | null;

export const DESKTOP_BINDINGS: Record<string, string> = {
  w: "dpad +y (fly/rotate forward)",
  s: "dpad -y",
  a: "dpad -x",
  d: "dpad +x",
  shift: "modifier hold (time scrub)",
  o: "indicator click (return to overview)",
  click: "trigger (select / confirm / auto-fly)",
  mouse: "head pose (mouse-look)",
};

function axisFromKeys(keys: Set<string>): [number, number] {
  const x = (keys.has("d") ? 1 : 0) - (keys.has("a") ? 1 : 0);
  const y = (keys.has("w") ? 1 : 0) - (keys.has("s") ? 1 : 0);
  return [x, y];
}

/** Map one VR controller + head sample to core events (ordered). */
export function mapVrInput(
  controller: VrControllerSample,
  head: VrHeadSample,
  hovered: HoverSource,
  timestamp: number,
): CoreEvent[] {
  const events: CoreEvent[] = [
    {
      kind: "head_pose",
      position: head.position,
      orientation: head.orientation,
      timestamp,
    },
    {
      kind: "controller_pose",
      position: controller.position,
      orientation: controller.orientation,
      timestamp,
    },
    { kind: "modifier", held: controller.sideButtonHeld, timestamp },
  ];
  const [x, y] = controller.axes;
  if (x !== 0 || y !== 0) {
    events.push({ kind: "dpad", x, y, timestamp });
  }
  if (controller.triggerPressed) {
    if (controller.pointingAtIndicator) {
      events.push({ kind: "indicator_click", timestamp });
    } else {
      events.push({ kind: "trigger", entity: hovered(), timestamp });
    }
  }
  return events;
}

/** Map one desktop keyboard/mouse sample to core events (ordered). */
export function mapDesktopInput(
  sample: DesktopSample,
  hovered: HoverSource,
  timestamp: number,
): CoreEvent[] {
  const events: CoreEvent[] = [
    {
      kind: "head_pose",
      position: sample.position,
      orientation: sample.lookOrientation,
      timestamp,
    },
    // the desktop "laser" runs along the view direction
    {
      kind: "controller_pose",
      position: sample.position,
      orientation: sample.lookOrientation,
      timestamp,
    },
    { kind: "modifier", held: sample.keys.has("shift"), timestamp },
  ];
  const [x, y] = axisFromKeys(sample.keys);
  if (x !== 0 || y !== 0) {
    events.push({ kind: "dpad", x, y, timestamp });
  }
  if (sample.keys.has("o")) {
    events.push({ kind: "indicator_click", timestamp });
  }
  if (sample.mouseClicked) {
    events.push({ kind: "trigger", entity: hovered(), timestamp });
  }
  return events;
}

export const ALL_CORE_EVENT_KINDS: CoreEventKind[] = [
  "dpad",
  "trigger",
  "modifier",
  "head_pose",
  "controller_pose",
  "indicator_click",
];

/** Event kinds a binding can emit; used to assert full coverage. */
export function reachableKinds(mapper: "vr" | "desktop"): Set<CoreEventKind> {
  const hovered: HoverSource = () => ({ kind: "node", ident: "probe" });
  const kinds = new Set<CoreEventKind>();
  if (mapper === "vr") {
    const head: VrHeadSample = { position: [0, 0, 0], orientation: [0, 0, 0, 1] };
    const base: VrControllerSample = {
      axes: [0, 0],
      triggerPressed: false,
      sideButtonHeld: false,
      position: [0, 0, 0],
      orientation: [0, 0, 0, 1],
      pointingAtIndicator: false,
    };
    const samples: VrControllerSample[] = [
      { ...base, axes: [1, 0] },
      { ...base, triggerPressed: true },
      { ...base, triggerPressed: true, pointingAtIndicator: true },
      { ...base, sideButtonHeld: true },
    ];
    for (const s of samples) {
      for (const e of mapVrInput(s, head, hovered, 0)) kinds.add(e.kind);
    }
  } else {
    const base: DesktopSample = {
      keys: new Set(),
      mouseClicked: false,
      lookOrientation: [0, 0, 0, 1],
      position: [0, 0, 0],
    };
    const samples: DesktopSample[] = [
      { ...base, keys: new Set(["w"]) },
      { ...base, keys: new Set(["shift"]) },
      { ...base, keys: new Set(["o"]) },
      { ...base, mouseClicked: true },
    ];
    for (const s of samples) {
      for (const e of mapDesktopInput(s, hovered, 0)) kinds.add(e.kind);
    }
  }
  return kinds;
}

/**
 * The core boundary. Every semantic decision (picking, highlighting,
 * opacities, poses, time state) is made by the engine behind this
 * interface; the frontend only renders what comes back and forwards
 * timestamped input events.
 */
import { ParsedBuffers, parseFrameBuffers } from "./bufferLayout.js";

export type Vec3 = [number, number, number];
export type Quat = [number, number, number, number]; // xyzw

export type CoreEvent =
  | { kind: "dpad"; x: number; y: number; timestamp: number }
  | { kind: "trigger"; entity?: HoveredEntity | null; timestamp: number }
  | { kind: "modifier"; held: boolean; timestamp: number }
  | { kind: "head_pose"; position: Vec3; orientation: Quat; timestamp: number }
  | { kind: "controller_pose"; position: Vec3; orientation: Quat; timestamp: number }
  | { kind: "indicator_click"; timestamp: number };

export type CoreEventKind = CoreEvent["kind"];

export interface HoveredEntity {
  kind: "node" | "edge";
  ident: string | number;
}

export interface LabelPayload {
  kind: string;
  ident: string | number;
  text: string;
  screen_center: boolean;
  /** opaque element attributes, appended to the detail label */
  extra?: Record<string, unknown>;
}

export interface TimeBarPayload {
  frame_count: number;
  current: number;
  progress: number;
  target: number;
}

export interface OverlayPayload {
  label: LabelPayload | null;
  time_bar: TimeBarPayload;
  perspective: "overview" | "detail";
  selected_node: string | null;
}

export interface GraphStats {
  nodes: number;
  edges: number;
  frames: number;
}

export interface CoreBridge {
  loadGraph(doc: unknown): Promise<GraphStats>;
  sendInput(event: CoreEvent): Promise<void>;
  /** Advance the engine and fetch the packed instance buffers. */
  frame(dt: number): Promise<ParsedBuffers>;
  overlays(): Promise<OverlayPayload>;
}

/** Talks to the local bridge server over the documented wire formats. */
export class HttpCoreBridge implements CoreBridge {
  constructor(private readonly base: string = "http://127.0.0.1:8023") {}

  async loadGraph(doc: unknown): Promise<GraphStats> {
    const res = await fetch(`${this.base}/graph`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(doc),
    });
    if (!res.ok) {
      throw new Error(`graph rejected: ${res.status} ${await res.text()}`);
    }
    return (await res.json()) as GraphStats;
  }

  async sendInput(event: CoreEvent): Promise<void> {
    const res = await fetch(`${this.base}/input`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(event),
    });
    if (!res.ok) {
      throw new Error(`input rejected: ${res.status} ${await res.text()}`);
    }
  }

  async frame(dt: number): Promise<ParsedBuffers> {
    const res = await fetch(`${this.base}/frame?dt=${dt}`);
    if (!res.ok) {
      throw new Error(`frame failed: ${res.status}`);
    }
    return parseFrameBuffers(await res.arrayBuffer());
  }

  async overlays(): Promise<OverlayPayload> {
    const res = await fetch(`${this.base}/overlays`);
    if (!res.ok) {
      throw new Error(`overlays failed: ${res.status}`);
    }
    return (await res.json()) as OverlayPayload;
  }
}

/**
 * Browser entry point: loads a graph (file picker or ?graph= URL),
 * streams frames from the core bridge, and runs the desktop or
 * immersive render loop. All interaction semantics live in the core.
 */
import * as THREE from "three";
import { HttpCoreBridge } from "./coreBridge.js";
import { DESKTOP_BINDINGS, DesktopSample, mapDesktopInput } from "./inputMap.js";
import { applyOverlayDom, buildOverlayModel } from "./overlays.js";
import { SceneBinder } from "./sceneBinder.js";
import { SessionModeState, toggleSessionMode } from "./sessionMode.js";

const FRAME_DT = 1 / 60;

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const bridge = new HttpCoreBridge(params.get("bridge") ?? "http://127.0.0.1:8023");
  const binder = new SceneBinder();
  const renderer = new THREE.WebGLRenderer({ antialias: true });
  renderer.setSize(window.innerWidth, window.innerHeight);
  renderer.xr.enabled = true;
  el("viewport").appendChild(renderer.domElement);

  const camera = new THREE.PerspectiveCamera(
    60, window.innerWidth / window.innerHeight, 0.05, 5000,
  );
  camera.position.set(0, 0, 0.01);
  binder.scene.add(new THREE.AmbientLight(0xffffff, 0.7));
  const sun = new THREE.DirectionalLight(0xffffff, 1.2);
  sun.position.set(1, 2, 1);
  binder.scene.add(sun);

  let modeState: SessionModeState = { mode: "desktop", notice: null };
  el("vr-toggle").addEventListener("click", async () => {
    modeState = await toggleSessionMode(modeState, navigator.xr);
    el("notice").textContent = modeState.notice ?? "";
  });

  const keys = new Set<string>();
  let clicked = false;
  let yaw = 0;
  let pitch = 0;
  window.addEventListener("keydown", (e) => keys.add(e.key.toLowerCase()));
  window.addEventListener("keyup", (e) => keys.delete(e.key.toLowerCase()));
  renderer.domElement.addEventListener("click", () => (clicked = true));
  renderer.domElement.addEventListener("mousemove", (e) => {
    if (e.buttons & 2 || document.pointerLockElement) {
      yaw -= e.movementX * 0.003;
      pitch = Math.max(-1.4, Math.min(1.4, pitch - e.movementY * 0.003));
    }
  });
  renderer.domElement.addEventListener("contextmenu", (e) => e.preventDefault());

  el("bindings").textContent = Object.entries(DESKTOP_BINDINGS)
    .map(([k, v]) => `${k}: ${v}`)
    .join("   ");

  const loadDoc = async (doc: unknown) => {
    const stats = await bridge.loadGraph(doc);
    el("notice").textContent =
      `loaded ${stats.nodes} nodes / ${stats.edges} edges / ${stats.frames} frames`;
  };
  (el("graph-file") as HTMLInputElement).addEventListener("change", async (e) => {
    const file = (e.target as HTMLInputElement).files?.[0];
    if (file) await loadDoc(JSON.parse(await file.text()));
  });
  const graphUrl = params.get("graph");
  if (graphUrl) {
    await loadDoc(await (await fetch(graphUrl)).json());
  }

  let hovered: { kind: "node" | "edge"; ident: string | number } | null = null;
  const overlayDom = {
    label: el("label"),
    timeBar: el("time-bar"),
    perspective: el("perspective"),
  };

  const tick = async () => {
    const look = new THREE.Quaternion().setFromEuler(
      new THREE.Euler(pitch, yaw, 0, "YXZ"),
    );
    const sample: DesktopSample = {
      keys,
      mouseClicked: clicked,
      lookOrientation: [look.x, look.y, look.z, look.w],
      position: [camera.position.x, camera.position.y, camera.position.z],
    };
    clicked = false;
    for (const event of mapDesktopInput(sample, () => hovered, performance.now())) {
      await bridge.sendInput(event);
    }
    const buffers = await bridge.frame(FRAME_DT);
    binder.renderFrame(buffers);
    const payload = await bridge.overlays();
    hovered = payload.label
      ? { kind: payload.label.kind as "node" | "edge", ident: payload.label.ident }
      : null;
    applyOverlayDom(buildOverlayModel(payload, buffers.indicator), overlayDom);
    camera.quaternion.copy(look);
    binder.setLaser(camera.position, look);
    renderer.render(binder.scene, camera);
  };

  renderer.setAnimationLoop(() => {
    void tick();
  });
}

void boot();

/**
 * Binds the core's parsed instance buffers to three.js InstancedMesh
 * batches: one draw for node spheres, one for edge tubes, one for
 * direction arrows, plus fixed overlay props (laser line, camera prop,
 * indicator arrow). Draw-call count stays O(1) in graph size.
 *
 * Per-instance opacity arrives in the buffers; InstancedMesh has no
 * per-instance alpha channel, so faded elements are blended toward the
 * background color instead (visually equivalent on the dark backdrop).
 */
import * as THREE from "three";
import { EDGE_STRIDE, NODE_STRIDE, ParsedBuffers } from "./bufferLayout.js";

export const BACKGROUND = new THREE.Color(0.05, 0.06, 0.08);
const MAX_INSTANCES = 20000;

const _m = new THREE.Matrix4();
const _q = new THREE.Quaternion();
const _p = new THREE.Vector3();
const _s = new THREE.Vector3();
const _c = new THREE.Color();

function fadedColor(r: number, g: number, b: number, a: number): THREE.Color {
  _c.setRGB(
    r * a + BACKGROUND.r * (1 - a),
    g * a + BACKGROUND.g * (1 - a),
    b * a + BACKGROUND.b * (1 - a),
  );
  return _c;
}

export class SceneBinder {
  readonly scene: THREE.Scene;
  readonly graphRoot: THREE.Group;
  readonly nodeMesh: THREE.InstancedMesh;
  readonly edgeMesh: THREE.InstancedMesh;
  readonly arrowMesh: THREE.InstancedMesh;
  readonly laser: THREE.Line;
  readonly cameraProp: THREE.Group;
  readonly indicatorArrow: THREE.Mesh;

  constructor(scene?: THREE.Scene) {
    this.scene = scene ?? new THREE.Scene();
    this.scene.background = BACKGROUND.clone();
    this.graphRoot = new THREE.Group();
    this.graphRoot.name = "graph";
    this.scene.add(this.graphRoot);

    this.nodeMesh = new THREE.InstancedMesh(
      new THREE.SphereGeometry(1.0, 16, 12),
      new THREE.MeshLambertMaterial(),
      MAX_INSTANCES,
    );
    this.nodeMesh.name = "nodes";

    // unit tube along +z so the core's z-aligned quaternions apply directly
    const tube = new THREE.CylinderGeometry(1.0, 1.0, 1.0, 8, 1, true);
    tube.rotateX(Math.PI / 2);
    this.edgeMesh = new THREE.InstancedMesh(
      tube, new THREE.MeshLambertMaterial(), MAX_INSTANCES,
    );
    this.edgeMesh.name = "edges";

    const cone = new THREE.ConeGeometry(1.0, 1.0, 8);
    cone.rotateX(Math.PI / 2); // point along +z, toward the target node
    this.arrowMesh = new THREE.InstancedMesh(
      cone, new THREE.MeshLambertMaterial(), MAX_INSTANCES,
    );
    this.arrowMesh.name = "arrows";

    for (const mesh of [this.nodeMesh, this.edgeMesh, this.arrowMesh]) {
      mesh.instanceMatrix.setUsage(THREE.DynamicDrawUsage);
      mesh.count = 0;
      mesh.frustumCulled = false;
      this.graphRoot.add(mesh);
    }

    this.laser = new THREE.Line(
      new THREE.BufferGeometry().setFromPoints([
        new THREE.Vector3(0, 0, 0),
        new THREE.Vector3(0, 0, -200),
      ]),
      new THREE.LineBasicMaterial({ color: 0x66ffcc }),
    );
    this.laser.name = "laser";
    this.scene.add(this.laser);

    this.cameraProp = buildCameraProp();
    this.cameraProp.visible = false;
    this.scene.add(this.cameraProp);

    this.indicatorArrow = new THREE.Mesh(
      new THREE.ConeGeometry(0.02, 0.06, 12),
      new THREE.MeshBasicMaterial({ color: 0x33dd55 }),
    );
    this.indicatorArrow.name = "indicator";
    this.indicatorArrow.visible = false;
    this.scene.add(this.indicatorArrow);
  }

  /** Number of instanced draw batches the current frame needs (<= 3). */
  instancedBatchCount(): number {
    return [this.nodeMesh, this.edgeMesh, this.arrowMesh].filter(
      (m) => m.visible && m.count > 0,
    ).length;
  }

  /** Apply one frame of core output; exactly one instanced draw per
   *  nonempty batch. */
  renderFrame(buffers: ParsedBuffers): void {
    this.bindNodes(buffers);
    this.bindTubes(this.edgeMesh, buffers.edges, buffers.edgeCount);
    this.bindTubes(this.arrowMesh, buffers.arrows, buffers.arrowCount);

    if (buffers.cameraProp) {
      const p = buffers.cameraProp;
      this.cameraProp.position.set(p[0], p[1], p[2]);
      this.cameraProp.quaternion.set(p[3], p[4], p[5], p[6]);
      this.cameraProp.visible = true;
    } else {
      this.cameraProp.visible = false;
    }
    this.indicatorArrow.visible = buffers.indicator !== null;
  }

  private bindNodes(buffers: ParsedBuffers): void {
    const mesh = this.nodeMesh;
    const data = buffers.nodes;
    const count = Math.min(buffers.nodeCount, MAX_INSTANCES);
    for (let i = 0; i < count; i++) {
      const o = i * NODE_STRIDE;
      _p.set(data[o], data[o + 1], data[o + 2]);
      const r = data[o + 3];
      _s.set(r, r, r);
      _m.compose(_p, _q.identity(), _s);
      mesh.setMatrixAt(i, _m);
      mesh.setColorAt(i, fadedColor(data[o + 4], data[o + 5], data[o + 6], data[o + 7]));
    }
    mesh.count = count;
    mesh.visible = count > 0;
    mesh.instanceMatrix.needsUpdate = true;
    if (mesh.instanceColor) mesh.instanceColor.needsUpdate = true;
  }

  private bindTubes(mesh: THREE.InstancedMesh, data: Float32Array, total: number): void {
    const count = Math.min(total, MAX_INSTANCES);
    for (let i = 0; i < count; i++) {
      const o = i * EDGE_STRIDE;
      _p.set(data[o], data[o + 1], data[o + 2]);
      _q.set(data[o + 3], data[o + 4], data[o + 5], data[o + 6]);
      const length = data[o + 7];
      const girth = data[o + 8];
      _s.set(girth, girth, length);
      _m.compose(_p, _q, _s);
      mesh.setMatrixAt(i, _m);
      mesh.setColorAt(i, fadedColor(data[o + 9], data[o + 10], data[o + 11], data[o + 12]));
    }
    mesh.count = count;
    mesh.visible = count > 0;
    mesh.instanceMatrix.needsUpdate = true;
    if (mesh.instanceColor) mesh.instanceColor.needsUpdate = true;
  }

  setLaser(origin: THREE.Vector3, quaternion: THREE.Quaternion): void {
    this.laser.position.copy(origin);
    this.laser.quaternion.copy(quaternion);
  }
}

function buildCameraProp(): THREE.Group {
  const group = new THREE.Group();
  group.name = "cameraProp";
  const body = new THREE.Mesh(
    new THREE.BoxGeometry(0.8, 0.5, 0.4),
    new THREE.MeshLambertMaterial({ color: 0xcccccc }),
  );
  const lens = new THREE.Mesh(
    new THREE.ConeGeometry(0.25, 0.4, 12),
    new THREE.MeshLambertMaterial({ color: 0x888888 }),
  );
  lens.rotation.x = -Math.PI / 2;
  lens.position.z = -0.4;
  group.add(body, lens);
  return group;
}

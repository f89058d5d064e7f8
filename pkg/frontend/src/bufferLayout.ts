/**
 * Parser for the core's packed instance-buffer wire format.
 *
 * Layout (little-endian):
 *   "GDIB" | u32 version=1 | u32 nodeCount | u32 edgeCount | u32 arrowCount
 *   | u32 propFlags | f32[7] cameraProp | f32[3] indicator
 *   | nodeCount  x f32[8]  (px py pz radius r g b a)
 *   | edgeCount  x f32[13] (mx my mz qx qy qz qw length girth r g b a)
 *   | arrowCount x f32[13] (same fields as edges)
 *
 * The frontend never derives any of these values itself; it binds what
 * the core emitted.
 */

export const NODE_STRIDE = 8;
export const EDGE_STRIDE = 13;
const MAGIC = 0x42494447; // "GDIB" as little-endian u32
const HEADER_BYTES = 4 + 5 * 4;
const PROP_BYTES = (7 + 3) * 4;

export interface ParsedBuffers {
  nodeCount: number;
  edgeCount: number;
  arrowCount: number;
  /** nodeCount x NODE_STRIDE floats */
  nodes: Float32Array;
  /** edgeCount x EDGE_STRIDE floats */
  edges: Float32Array;
  /** arrowCount x EDGE_STRIDE floats */
  arrows: Float32Array;
  /** position xyz + quaternion xyzw of the overview camera prop */
  cameraProp: Float32Array | null;
  /** head-local unit direction of the green overview arrow */
  indicator: Float32Array | null;
}

export class BufferLayoutError extends Error {}

export function parseFrameBuffers(data: ArrayBuffer): ParsedBuffers {
  if (data.byteLength < HEADER_BYTES + PROP_BYTES) {
    throw new BufferLayoutError(
      `frame blob too short: ${data.byteLength} bytes < header ${HEADER_BYTES + PROP_BYTES}`,
    );
  }
  const head = new DataView(data);
  if (head.getUint32(0, true) !== MAGIC) {
    throw new BufferLayoutError("bad magic: expected GDIB");
  }
  const version = head.getUint32(4, true);
  if (version !== 1) {
    throw new BufferLayoutError(`unsupported buffer version ${version}`);
  }
  const nodeCount = head.getUint32(8, true);
  const edgeCount = head.getUint32(12, true);
  const arrowCount = head.getUint32(16, true);
  const flags = head.getUint32(20, true);

  const expected =
    HEADER_BYTES + PROP_BYTES +
    4 * (nodeCount * NODE_STRIDE + (edgeCount + arrowCount) * EDGE_STRIDE);
  if (data.byteLength !== expected) {
    throw new BufferLayoutError(
      `frame blob length mismatch: got ${data.byteLength} bytes, expected ${expected} ` +
      `(nodes ${nodeCount} x ${NODE_STRIDE}, edges ${edgeCount} x ${EDGE_STRIDE}, ` +
      `arrows ${arrowCount} x ${EDGE_STRIDE})`,
    );
  }

  let offset = HEADER_BYTES;
  const cameraProp = new Float32Array(data, offset, 7).slice();
  offset += 7 * 4;
  const indicator = new Float32Array(data, offset, 3).slice();
  offset += 3 * 4;
  const nodes = new Float32Array(data, offset, nodeCount * NODE_STRIDE);
  offset += nodeCount * NODE_STRIDE * 4;
  const edges = new Float32Array(data, offset, edgeCount * EDGE_STRIDE);
  offset += edgeCount * EDGE_STRIDE * 4;
  const arrows = new Float32Array(data, offset, arrowCount * EDGE_STRIDE);

  return {
    nodeCount,
    edgeCount,
    arrowCount,
    nodes,
    edges,
    arrows,
    cameraProp: (flags & 1) !== 0 ? cameraProp : null,
    indicator: (flags & 2) !== 0 ? indicator : null,
  };
}

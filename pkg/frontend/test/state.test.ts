import { describe, expect, it } from "vitest";

import type { SessionState } from "../src/api.js";
import { buildViewState, formatCycles, layout } from "../src/state.js";

const STATE: SessionState = {
  id: "s1",
  ice_quiver: {
    n: 3,
    arrows: [
      [1, 2, 1],
      [2, 3, 2],
      [3, 1, 1],
    ],
    c_matrix: [
      [1, 0, 0],
      [0, -1, 0],
      [1, 0, 1],
    ],
  },
  signs: ["green", "red", "green"],
  history: [{ vertex: 2, eps: 1 }],
  reddening: null,
};

describe("formatCycles", () => {
  it("identity", () => {
    expect(formatCycles([1, 2, 3])).toBe("id");
  });
  it("transposition", () => {
    expect(formatCycles([2, 1])).toBe("(12)");
  });
  it("three involutions", () => {
    expect(formatCycles([2, 1, 4, 3, 6, 5])).toBe("(12)(34)(56)");
  });
  it("long cycle", () => {
    expect(formatCycles([3, 2, 1])).toBe("(13)");
    expect(formatCycles([2, 3, 1])).toBe("(123)");
  });
  it("spaces once vertices reach two digits", () => {
    const image = [10, 2, 3, 4, 5, 6, 7, 8, 9, 1];
    expect(formatCycles(image)).toBe("(1 10)");
  });
});

describe("layout", () => {
  it("is deterministic and circular", () => {
    const a = layout(4, 400, 400);
    const b = layout(4, 400, 400);
    expect(a).toEqual(b);
    expect(a[0].x).toBeCloseTo(200, 1); // first vertex at the top
    expect(a[0].y).toBeLessThan(200);
  });
});

describe("buildViewState", () => {
  it("is a pure function of the session payload", () => {
    const v1 = buildViewState(STATE);
    const v2 = buildViewState(STATE);
    expect(v1).toEqual(v2);
  });

  it("maps signs and arrows", () => {
    const view = buildViewState(STATE);
    expect(view.vertices.map((v) => v.sign)).toEqual(["green", "red", "green"]);
    expect(view.arrows).toEqual([
      { from: 1, to: 2, mult: 1 },
      { from: 2, to: 3, mult: 2 },
      { from: 3, to: 1, mult: 1 },
    ]);
    expect(view.cMatrix[2]).toEqual([1, 0, 1]);
    expect(view.reddening).toBeNull();
  });

  it("formats the boundary permutation", () => {
    const view = buildViewState({ ...STATE, reddening: [3, 2, 1] });
    expect(view.reddening).toEqual({ image: [3, 2, 1], cycles: "(13)" });
  });
});

import { describe, expect, it } from "vitest";

import { mbbPerHand, scoreLine } from "../src/score.js";

describe("mbbPerHand", () => {
  it("one big blind over one hand is 1000", () => {
    expect(mbbPerHand(10, 1, 10)).toBe(1000);
  });

  it("one small blind is 500", () => {
    expect(mbbPerHand(5, 1, 10)).toBe(500);
  });

  it("losing a big blind is -1000", () => {
    expect(mbbPerHand(-10, 1, 10)).toBe(-1000);
  });

  it("scales by hands", () => {
    expect(mbbPerHand(10, 4, 10)).toBe(250);
  });

  it("rejects zero hands", () => {
    expect(() => mbbPerHand(10, 0, 10)).toThrow();
  });
});

describe("scoreLine", () => {
  it("empty session", () => {
    expect(scoreLine({ hands: 0, totalDelta: 0, bigBlind: 10 })).toMatch(/no hands/);
  });

  it("formats rate", () => {
    const line = scoreLine({ hands: 2, totalDelta: -20, bigBlind: 10 });
    expect(line).toContain("2 hands");
    expect(line).toContain("-20 chips");
    expect(line).toContain("-1000.0 mbb/h");
  });
});

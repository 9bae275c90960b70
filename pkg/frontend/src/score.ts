// Session scoring: milli big blinds per hand, same formula the engine uses.

export function mbbPerHand(
  totalChipDelta: number,
  hands: number,
  bigBlind: number,
): number {
  if (hands < 1) {
    throw new Error("hands must be >= 1");
  }
  return (1000 * totalChipDelta) / (bigBlind * hands);
}

export interface SessionScore {
  hands: number;
  totalDelta: number;
  bigBlind: number;
}

export function scoreLine(score: SessionScore): string {
  if (score.hands === 0) {
    return "no hands completed yet";
  }
  const rate = mbbPerHand(score.totalDelta, score.hands, score.bigBlind);
  const sign = score.totalDelta >= 0 ? "+" : "";
  return `${score.hands} hands, ${sign}${score.totalDelta} chips, ${rate.toFixed(1)} mbb/h`;
}

import { describe, expect, it } from "vitest";

import { initialState, type AnalyzeResponse } from "../src/types.js";
import {
  CHIP_MAX_PX,
  CHIP_MIN_PX,
  chipColor,
  chipFontSize,
  renderAnalysisMode,
  renderInputMode,
} from "../src/view.js";
import { mockResponse } from "./fixtures.js";

function analysisState(response: AnalyzeResponse) {
  const state = initialState();
  state.mode = "ANALYSIS";
  state.draft = { headline: "Easter Rising remembered in Dublin", subheadline: "", body: "x" };
  state.lastResponse = response;
  return state;
}

const noopAnalysis = { onHeadlineEdit: () => {}, onBack: () => {} };
const noopInput = { onDraftChange: () => {}, onAnalyze: () => {}, onFeedSelect: () => {} };

describe("analysis mode rendering", () => {
  it("shows three green chips, two red chips and exactly one alert banner", () => {
    const doc = renderAnalysisMode(analysisState(mockResponse()), noopAnalysis);
    expect(doc.querySelectorAll(".chip.green")).toHaveLength(3);
    expect(doc.querySelectorAll(".chip.red")).toHaveLength(2);
    expect(doc.querySelectorAll(".alert-banner")).toHaveLength(1);
    expect(doc.querySelector(".alert-banner")!.textContent).toContain("Facebook");
  });

  it("renders five green chips when every keyword is in the headline", () => {
    const response = mockResponse();
    response.keywords = response.keywords.map((k) => ({ ...k, in_headline: true }));
    const doc = renderAnalysisMode(analysisState(response), noopAnalysis);
    expect(doc.querySelectorAll(".chip.green")).toHaveLength(5);
    expect(doc.querySelectorAll(".chip.red")).toHaveLength(0);
  });

  it("shows no alert banners when both flags are false", () => {
    const response = mockResponse();
    response.shareability = { fb_score: 1, tw_score: 1, fb_alert: false, tw_alert: false };
    const doc = renderAnalysisMode(analysisState(response), noopAnalysis);
    expect(doc.querySelectorAll(".alert-banner")).toHaveLength(0);
  });

  it("shows both banners when both alerts fire", () => {
    const response = mockResponse();
    response.shareability = { fb_score: 9, tw_score: 9, fb_alert: true, tw_alert: true };
    const doc = renderAnalysisMode(analysisState(response), noopAnalysis);
    expect(doc.querySelectorAll(".alert-banner")).toHaveLength(2);
  });

  it("omits banners entirely when shareability is null", () => {
    const response = mockResponse();
    response.shareability = null;
    const doc = renderAnalysisMode(analysisState(response), noopAnalysis);
    expect(doc.querySelectorAll(".alert-banner")).toHaveLength(0);
  });

  it("gives equal-weight keywords a uniform font size", () => {
    const response = mockResponse();
    response.keywords = response.keywords.map((k) => ({ ...k, weight: 0.5 }));
    const doc = renderAnalysisMode(analysisState(response), noopAnalysis);
    const sizes = [...doc.querySelectorAll<HTMLElement>(".chip")].map((c) => c.style.fontSize);
    expect(new Set(sizes).size).toBe(1);
  });

  it("sizes chips monotonically with weight", () => {
    const doc = renderAnalysisMode(analysisState(mockResponse()), noopAnalysis);
    const sizes = [...doc.querySelectorAll<HTMLElement>(".chip")].map((c) =>
      parseFloat(c.style.fontSize),
    );
    // server order is weight-descending, so sizes must not increase
    for (let i = 1; i < sizes.length; i += 1) {
      expect(sizes[i]).toBeLessThanOrEqual(sizes[i - 1]);
    }
    expect(Math.max(...sizes)).toBe(CHIP_MAX_PX);
    expect(Math.min(...sizes)).toBe(CHIP_MIN_PX);
  });

  it("renders the score table with server values in server order", () => {
    const doc = renderAnalysisMode(analysisState(mockResponse()), noopAnalysis);
    const rows = [...doc.querySelectorAll("tbody tr")];
    expect(rows).toHaveLength(5);
    const first = rows[0].querySelectorAll("td");
    expect(first[0].textContent).toBe("Easter Rising");
    expect(first[1].textContent).toBe("0.880");
    expect(first[2].textContent).toBe("1");
    expect(first[3].textContent).toBe("88");
  });

  it("shows the stale badge only after a failed refresh", () => {
    const state = analysisState(mockResponse());
    expect(renderAnalysisMode(state, noopAnalysis).querySelector(".stale-badge")).toBeNull();
    state.stale = true;
    expect(renderAnalysisMode(state, noopAnalysis).querySelector(".stale-badge")).not.toBeNull();
  });
});

describe("chip helpers are pure", () => {
  it("color depends only on the flag", () => {
    expect(chipColor(true)).toBe("green");
    expect(chipColor(false)).toBe("red");
  });

  it("size is linear between the extremes", () => {
    expect(chipFontSize(0.5, 0.5, 0.9)).toBe(CHIP_MIN_PX);
    expect(chipFontSize(0.9, 0.5, 0.9)).toBe(CHIP_MAX_PX);
    expect(chipFontSize(0.7, 0.5, 0.9)).toBeCloseTo((CHIP_MIN_PX + CHIP_MAX_PX) / 2, 10);
  });
});

describe("input mode rendering", () => {
  it("disables analyze while the body is empty", () => {
    const state = initialState();
    const doc = renderInputMode(state, noopInput);
    const button = doc.querySelector<HTMLButtonElement>("#analyze")!;
    expect(button.disabled).toBe(true);
  });

  it("enables analyze once the body has text", () => {
    const state = initialState();
    state.draft.body = "Some article text.";
    const doc = renderInputMode(state, noopInput);
    expect(doc.querySelector<HTMLButtonElement>("#analyze")!.disabled).toBe(false);
  });

  it("lists feed items and reports selection", () => {
    const state = initialState();
    state.feed = [
      { id: "a1", headline: "First", source: null, preview: "p1" },
      { id: "a2", headline: "Second", source: null, preview: "p2" },
    ];
    let selected = "";
    const doc = renderInputMode(state, {
      ...noopInput,
      onFeedSelect: (id) => {
        selected = id;
      },
    });
    const items = doc.querySelectorAll<HTMLElement>(".feed-item");
    expect(items).toHaveLength(2);
    items[1].click();
    expect(selected).toBe("a2");
  });

  it("keeps manual entry available when the feed failed", () => {
    const state = initialState();
    state.feedError = "boom";
    const doc = renderInputMode(state, noopInput);
    expect(doc.querySelector(".feed-error")).not.toBeNull();
    expect(doc.querySelector("textarea#body")).not.toBeNull();
  });
});

import type { AnalyzeResponse } from "../src/types.js";

export function keyword(canonical: string, weight: number, inHeadline: boolean) {
  return {
    canonical,
    weight,
    frequency: 1,
    seo_score: Math.round(weight * 100),
    in_headline: inHeadline,
  };
}

/** Three green, two red, Facebook alert only. */
export function mockResponse(): AnalyzeResponse {
  return {
    keywords: [
      keyword("Easter Rising", 0.88, true),
      keyword("GPO", 0.87, false),
      keyword("Irish Republic", 0.86, false),
      keyword("Enda Kenny", 0.81, true),
      keyword("Dublin", 0.67, true),
    ],
    shareability: { fb_score: 4.2, tw_score: 0.9, fb_alert: true, tw_alert: false },
  };
}

"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel


class AnalyzeRequest(BaseModel):
    headline: str = ""
    subheadline: str = ""
    body: str


class KeywordOut(BaseModel):
    canonical: str
    weight: float
    frequency: int
    seo_score: int
    in_headline: bool


class ShareabilityOut(BaseModel):
    fb_score: float
    tw_score: float
    fb_alert: bool
    tw_alert: bool


class AnalyzeResponse(BaseModel):
    keywords: list[KeywordOut]
    shareability: ShareabilityOut | None = None


class FeedItem(BaseModel):
    id: str
    headline: str
    source: str | None = None
    preview: str


class ArticleOut(BaseModel):
    id: str
    headline: str
    subheadline: str
    body: str
    source: str | None = None


class ErrorBody(BaseModel):
    code: str
    message: str

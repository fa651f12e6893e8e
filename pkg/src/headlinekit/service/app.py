"""FastAPI application wrapping the analysis engine.

All handlers read only the immutable resources loaded at startup, so the
service is safe under concurrent requests and /api/analyze is side-effect
free: identical requests produce byte-identical JSON.

Errors use a uniform ``{code, message}`` body: malformed JSON is a 400,
schema violations and an empty article body are 422.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from ..analyzer import AnalysisResources, analyze_article
from ..config import AppConfig, build_config, load_resources
from ..corpus import Article, DataFormatError, load_article, load_article_dir
from .schemas import AnalyzeRequest, AnalyzeResponse, ArticleOut, FeedItem

PREVIEW_CHARS = 200


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(
    config: AppConfig | None = None,
    resources: AnalysisResources | None = None,
) -> FastAPI:
    config = config or build_config()
    resources = resources or load_resources(config)

    app = FastAPI(title="headlinekit", version="0.1.0")
    app.state.config = config
    app.state.resources = resources

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        if any(e.get("type") == "json_invalid" for e in errors):
            return _error(400, "malformed_json", "request body is not valid JSON")
        detail = "; ".join(
            f"{'.'.join(str(p) for p in e.get('loc', ()))}: {e.get('msg', '')}" for e in errors
        )
        return _error(422, "invalid_request", detail or "request failed validation")

    @app.post("/api/analyze", response_model=AnalyzeResponse, response_model_exclude_none=False)
    def analyze(request: AnalyzeRequest):
        if not request.body.strip():
            return _error(422, "empty_body", "article body must be non-empty")
        article = Article(
            id="request",
            headline=request.headline,
            subheadline=request.subheadline,
            body=request.body,
        )
        return analyze_article(article, resources)

    @app.get("/api/feed", response_model=list[FeedItem])
    def feed():
        try:
            articles = load_article_dir(config.feed_dir)
        except (OSError, DataFormatError) as exc:
            return _error(500, "feed_unavailable", str(exc))
        return [
            FeedItem(
                id=a.id,
                headline=a.headline,
                source=a.source,
                preview=a.body[:PREVIEW_CHARS],
            )
            for a in articles
        ]

    @app.get("/api/feed/{article_id}", response_model=ArticleOut)
    def feed_article(article_id: str):
        path = Path(config.feed_dir) / f"{article_id}.json"
        if not path.is_file():
            return _error(404, "not_found", f"no article {article_id!r} in the feed")
        try:
            article = load_article(path)
        except DataFormatError as exc:
            return _error(500, "feed_unavailable", str(exc))
        return ArticleOut(
            id=article.id,
            headline=article.headline,
            subheadline=article.subheadline,
            body=article.body,
            source=article.source,
        )

    @app.get("/api/config")
    def get_config():
        return {
            "lambda": config.lambda_,
            "beta": config.beta,
            "top_k": config.top_k,
            "thresholds": {"fb": config.fb_threshold, "tw": config.tw_threshold},
        }

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz():
        return "ok"

    if config.webui_dir and Path(config.webui_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.webui_dir, html=True), name="webui")

    return app

"""Operator commands: analyze, train, eval-overlap, db update, serve.

The CLI is a thin layer over the same engine the HTTP service uses, so
``analyze --format json`` and POST /api/analyze return identical JSON for
identical input and configuration.  Exit codes: 0 success, 1 runtime
failure, 2 usage error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .analyzer import analyze_article
from .config import build_config, load_ner_resources, load_resources
from .corpus import (
    DataFormatError,
    load_article,
    load_article_dir,
    load_keyword_db,
    load_lexicon,
    load_share_dataset,
    save_keyword_db,
    save_model,
    update_keyword_db,
)
from .gbt import GbtHyperparams, mse, split_train_test, train_gbt, train_ridge
from .ranking import evaluate_overlap
from .shareability import extract_features
from .textpipe import extract_resolved_keywords


def _config_options(fn):
    options = [
        click.option("--config", "config_file", type=click.Path(dir_okay=False), default=None,
                     help="Config file (key = value lines)."),
        click.option("--lambda", "lambda_", type=float, default=None,
                     help="Local/global balance in [0, 1]."),
        click.option("--beta", type=float, default=None,
                     help="Entity boost share in [0, 1]."),
        click.option("--top-k", type=int, default=None, help="Keywords to return."),
        click.option("--fb-threshold", type=float, default=None),
        click.option("--tw-threshold", type=float, default=None),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _make_config(config_file, **overrides):
    if config_file is not None and not Path(config_file).is_file():
        raise click.ClickException(f"config file not found: {config_file}")
    if "lambda_" in overrides:
        overrides["lambda"] = overrides.pop("lambda_")
    try:
        return build_config(config_file, **overrides)
    except (ValueError, OSError) as exc:
        raise click.ClickException(str(exc))


def _load_resources(config):
    try:
        return load_resources(config)
    except (OSError, DataFormatError) as exc:
        raise click.ClickException(str(exc))


@click.group()
@click.version_option(package_name="headlinekit")
def main():
    """Headline composition assistant: keyword ranking and shareability."""


@main.command()
@click.argument("article_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table",
              help="Output format.")
@_config_options
def analyze(article_path, fmt, config_file, lambda_, beta, top_k, fb_threshold, tw_threshold):
    """Analyze one article JSON file and print ranked keywords and scores."""
    config = _make_config(config_file, lambda_=lambda_, beta=beta, top_k=top_k,
                          fb_threshold=fb_threshold, tw_threshold=tw_threshold)
    resources = _load_resources(config)
    try:
        article = load_article(article_path)
        result = analyze_article(article, resources)
    except (DataFormatError, ValueError) as exc:
        raise click.ClickException(str(exc))

    if fmt == "json":
        click.echo(json.dumps(result, indent=2))
        return
    click.echo(f"{'Keyword':<30} {'Weight':>7} {'Frequency':>10} {'SEO Score':>10} {'In headline':>12}")
    for kw in result["keywords"]:
        click.echo(
            f"{kw['canonical']:<30} {kw['weight']:>7.3f} {kw['frequency']:>10} "
            f"{kw['seo_score']:>10} {'yes' if kw['in_headline'] else 'no':>12}"
        )
    share = result["shareability"]
    if share is None:
        click.echo("shareability: n/a (no headline to score)")
    else:
        fb_flag = " [ALERT]" if share["fb_alert"] else ""
        tw_flag = " [ALERT]" if share["tw_alert"] else ""
        click.echo(f"facebook score: {share['fb_score']:.2f}{fb_flag}")
        click.echo(f"twitter score:  {share['tw_score']:.2f}{tw_flag}")


@main.command()
@click.option("--data", "data_path", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Share dataset CSV (headline,fb_shares,tw_shares).")
@click.option("--platform", required=True, type=click.Choice(["fb", "tw"]))
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--n-trees", type=int, default=100, show_default=True)
@click.option("--max-depth", type=int, default=3, show_default=True)
@click.option("--shrinkage", type=float, default=0.1, show_default=True)
@click.option("--min-samples-leaf", type=int, default=5, show_default=True)
@click.option("--l2", type=float, default=1.0, show_default=True,
              help="Ridge penalty for the baseline comparison.")
@click.option("--config", "config_file", type=click.Path(dir_okay=False), default=None)
def train(data_path, platform, out_path, seed, n_trees, max_depth, shrinkage,
          min_samples_leaf, l2, config_file):
    """Train the share-count model for one platform and write it to a file.

    Splits the dataset 80/20 (seeded), trains the boosted-tree model and a
    ridge baseline, and reports both test MSEs.
    """
    config = _make_config(config_file)
    try:
        records = load_share_dataset(data_path)
    except DataFormatError as exc:
        raise click.ClickException(str(exc))
    if len(records) < 10:
        raise click.ClickException(f"need at least 10 records to train, got {len(records)}")

    lexicon = load_lexicon(config.lexicon)
    ner = load_ner_resources(config.gazetteer_dir)
    rows = []
    skipped = 0
    for record in records:
        try:
            features = extract_features(record.headline, lexicon, ner, config.sentiment_dead_zone)
        except ValueError:
            skipped += 1
            continue
        target = record.fb_shares if platform == "fb" else record.tw_shares
        rows.append((features.vector(), float(target)))
    if skipped:
        click.echo(f"skipped {skipped} headline(s) with no scoreable words", err=True)
    if len(rows) < 10:
        raise click.ClickException(f"need at least 10 usable records, got {len(rows)}")

    train_rows, test_rows = split_train_test(rows, 0.8, seed)
    x_train = [r[0] for r in train_rows]
    y_train = [r[1] for r in train_rows]
    x_test = [r[0] for r in test_rows]
    y_test = [r[1] for r in test_rows]

    hp = GbtHyperparams(n_trees=n_trees, max_depth=max_depth, shrinkage=shrinkage,
                        min_samples_leaf=min_samples_leaf, seed=seed)
    try:
        model = train_gbt(x_train, y_train, hp, platform=platform)
        baseline = train_ridge(x_train, y_train, l2)
    except ValueError as exc:
        raise click.ClickException(str(exc))

    gbt_mse = mse(model.predict_batch(x_test), y_test)
    ridge_mse = mse(baseline.predict_batch(x_test), y_test)
    save_model(model, out_path)

    click.echo(f"platform: {platform}")
    click.echo(f"records: {len(rows)} (train {len(train_rows)} / test {len(test_rows)})")
    click.echo(f"gbt_mse: {gbt_mse:.4f}")
    click.echo(f"ridge_mse: {ridge_mse:.4f}")
    click.echo(f"model written to {out_path}")


@main.command("eval-overlap")
@click.option("--corpus", "corpus_dir", required=True, type=click.Path(exists=True, file_okay=False),
              help="Directory of article JSON files with headlines.")
@_config_options
def eval_overlap(corpus_dir, config_file, lambda_, beta, top_k, fb_threshold, tw_threshold):
    """Report how often headlines already contain top-ranked keywords."""
    config = _make_config(config_file, lambda_=lambda_, beta=beta, top_k=top_k,
                          fb_threshold=fb_threshold, tw_threshold=tw_threshold)
    resources = _load_resources(config)
    try:
        corpus = load_article_dir(corpus_dir)
        if not corpus:
            raise click.ClickException(f"no articles in {corpus_dir}")
        stats = evaluate_overlap(corpus, resources.keyword_db, resources.ner, resources.params)
    except (DataFormatError, ValueError) as exc:
        raise click.ClickException(str(exc))
    click.echo(f"at_least_1: {stats.frac_at_least_1 * 100:.1f}%")
    click.echo(f"at_least_2: {stats.frac_at_least_2 * 100:.1f}%")


@main.group()
def db():
    """Keyword database maintenance."""


@db.command("update")
@click.option("--db", "db_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--article", "article_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_file", type=click.Path(dir_okay=False), default=None)
def db_update(db_path, article_path, config_file):
    """Fold one article's resolved keywords into the frequency database."""
    config = _make_config(config_file)
    try:
        keyword_db = load_keyword_db(db_path)
        article = load_article(article_path)
        ner = load_ner_resources(config.gazetteer_dir)
        resolved = extract_resolved_keywords(article.body, keyword_db, ner)
        updated = update_keyword_db(keyword_db, resolved)
        save_keyword_db(updated, db_path)
    except (OSError, DataFormatError, ValueError) as exc:
        raise click.ClickException(str(exc))
    click.echo(f"updated {db_path}: {len(resolved)} keyword(s) from article "
               f"{article.id!r}, {len(updated)} entries total", err=True)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None, help="Defaults to HEADLINEKIT_PORT or 8000.")
@_config_options
def serve(host, port, config_file, lambda_, beta, top_k, fb_threshold, tw_threshold):
    """Run the HTTP service until interrupted."""
    import uvicorn

    from .service import create_app

    config = _make_config(config_file, lambda_=lambda_, beta=beta, top_k=top_k,
                          fb_threshold=fb_threshold, tw_threshold=tw_threshold, port=port)
    resources = _load_resources(config)
    app = create_app(config=config, resources=resources)
    click.echo(f"serving on http://{host}:{config.port}", err=True)
    try:
        uvicorn.run(app, host=host, port=config.port, log_level="warning")
    except OSError as exc:
        raise click.ClickException(f"could not bind {host}:{config.port}: {exc}")
    except SystemExit as exc:
        # uvicorn exits 3 on startup failure (e.g. port already bound)
        if exc.code:
            raise click.ClickException(f"server failed to start on {host}:{config.port}")


if __name__ == "__main__":
    sys.exit(main())

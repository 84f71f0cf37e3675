"""Command-line pipeline driver.

Each subcommand reads and writes plain files (JSONL and CSV), so stages
chain through the filesystem and any intermediate can be inspected or
swapped.  Identical inputs and seed produce byte-identical outputs; no
command writes timestamps into artifacts.

Exit codes: 0 success, 1 domain or I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .analysis import (
    cluster_summaries,
    connectivity_profiles,
    flow_profiles,
    kmeans_cluster,
    profiles_to_rows,
)
from .corpus import (
    BUNDLE_FORMAT,
    LABEL_UNDECIDED,
    TWEETS_FORMAT,
    LabeledDataset,
    SyntheticConfig,
    generate_synthetic_corpus,
    ingest_bundles,
    iter_bundles,
    load_bundles,
    read_edges,
    read_labels,
    write_bundles,
    write_edges,
    write_labels,
)
from .errors import BotDetectError, CompatibilityError, DataError, DomainError
from .evaluation import (
    AgreementReport,
    EvalReport,
    auc,
    cohens_kappa,
    estimate_population,
    importance_ranking,
    infer_threshold,
    labels_to_binary,
    pairwise_agreement,
    per_decile_accuracy,
    stratified_folds,
    weighted_overall_accuracy,
)
from .features import FeatureRegistry, RegistryConfig
from .forest import TrainParams, load_model, save_model, score_matrix, train


def _write_json(path, data) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(json.dumps(data, sort_keys=True, separators=(",", ":")))
        handle.write("\n")


def _write_features(path, ids, names, X) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["user_id"] + list(names))
        for uid, row in zip(ids, X):
            writer.writerow([uid] + [repr(float(v)) for v in row])


def _read_features(path):
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if not header or header[0] != "user_id":
            raise DataError("features file must start with a user_id column")
        names = header[1:]
        ids = []
        rows = []
        for record in reader:
            if len(record) != len(header):
                raise DataError("feature row has %d columns, expected %d"
                                % (len(record), len(header)))
            ids.append(record[0])
            rows.append([float(v) for v in record[1:]])
    X = np.asarray(rows, dtype=np.float64)
    if X.size == 0:
        X = X.reshape(0, len(names))
    return ids, names, X


def _write_scores(path, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["user_id", "score"])
        for uid, value in rows:
            writer.writerow([uid, repr(float(value))])


def _read_scores(path) -> list[tuple[str, float]]:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or set(reader.fieldnames) != {"user_id", "score"}:
            raise DataError("scores file must have header user_id,score")
        return [(row["user_id"], float(row["score"])) for row in reader]


def _labels_for(ids, labels: dict) -> list[str]:
    missing = [uid for uid in ids if uid not in labels]
    if missing:
        raise DataError("no label for %d accounts (first: %s)"
                        % (len(missing), missing[0]))
    return [labels[uid] for uid in ids]


def _registry_from_args(args) -> FeatureRegistry:
    return FeatureRegistry(RegistryConfig(
        language_free=args.language_free,
        include_retweet_text=args.include_retweet_text,
    ))


def _registry_from_model(model) -> FeatureRegistry:
    stored = model.metadata.get("registry", {})
    registry = FeatureRegistry(RegistryConfig(
        language_free=bool(stored.get("language_free", False)),
        include_retweet_text=bool(stored.get("include_retweet_text", False)),
    ))
    if registry.fingerprint != model.registry_fingerprint:
        raise CompatibilityError(
            "model fingerprint does not match the registry in its metadata"
        )
    return registry


def _train_params(args) -> TrainParams:
    return TrainParams(
        n_trees=args.trees,
        max_depth=args.max_depth,
        workers=args.workers,
    )


def cmd_ingest(args) -> None:
    result = ingest_bundles(
        args.input, format=args.format, activity_filter=args.activity_filter
    )
    write_bundles(args.out, result.bundles)
    print("ingested %d bundles (%d malformed lines skipped)"
          % (len(result.bundles), result.malformed_count))


def cmd_synth(args) -> None:
    config = SyntheticConfig(
        humans=args.humans,
        simple_bots=args.simple_bots,
        sophisticated_bots=args.sophisticated_bots,
    )
    bundles, labels, edges = generate_synthetic_corpus(config, seed=args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_bundles(out / "bundles.jsonl", bundles)
    write_labels(
        out / "labels.csv",
        {b.user.user_id: label for b, label in zip(bundles, labels)},
    )
    write_edges(out / "edges.csv", edges)
    print("seed %d" % args.seed)
    print("generated %d accounts (%d humans, %d simple bots, %d sophisticated bots)"
          % (len(bundles), args.humans, args.simple_bots, args.sophisticated_bots))


def cmd_extract(args) -> None:
    bundles = load_bundles(args.bundles)
    registry = _registry_from_args(args)
    X = registry.extract_matrix(bundles)
    _write_features(args.out, [b.user.user_id for b in bundles],
                    registry.names(), X)
    print("extracted %d features for %d accounts" % (len(registry), len(bundles)))
    print("registry fingerprint %s" % registry.fingerprint)


def cmd_train(args) -> None:
    ids, names, X = _read_features(args.features)
    labels = _labels_for(ids, read_labels(args.labels))
    registry = _registry_from_args(args)
    if names != registry.names():
        raise DataError(
            "features file does not match the registry implied by the flags "
            "(%d columns vs %d)" % (len(names), len(registry))
        )
    model = train(
        X,
        labels_to_binary(labels),
        params=_train_params(args),
        seed=args.seed,
        registry_fingerprint=registry.fingerprint,
        metadata={"registry": {
            "language_free": args.language_free,
            "include_retweet_text": args.include_retweet_text,
        }},
    )
    report = infer_threshold(score_matrix(model, X), labels)
    model = model.with_threshold(report.threshold)
    save_model(model, args.out)
    print("seed %d" % args.seed)
    print("trained %d trees on %d accounts" % (model.params.n_trees, len(ids)))
    print("threshold %s (training accuracy %.4f)"
          % (repr(report.threshold), report.accuracy))


def cmd_cv(args) -> None:
    ids, _, X = _read_features(args.features)
    labels = _labels_for(ids, read_labels(args.labels))
    y = labels_to_binary(labels)
    params = _train_params(args)
    # Mirrors cross_validate fold-for-fold but keeps the held-out scores
    # so the report can include threshold and per-decile accuracy.
    folds = stratified_folds(y, args.folds, args.seed)
    all_rows = np.arange(X.shape[0])
    oof = np.zeros(X.shape[0], dtype=np.float64)
    fold_aucs = []
    for fold_index, test_rows in enumerate(folds):
        train_rows = np.setdiff1d(all_rows, test_rows)
        model = train(X[train_rows], y[train_rows], params=params,
                      seed=args.seed * 100003 + fold_index)
        oof[test_rows] = score_matrix(model, X[test_rows])
        fold_aucs.append(auc(oof[test_rows], y[test_rows]))
    mean_auc = float(np.mean(fold_aucs))
    threshold_report = infer_threshold(oof, labels)
    deciles = per_decile_accuracy(oof, labels, threshold_report.threshold)
    counts = np.minimum((oof * 10).astype(int), 9)
    weights = [int((counts == b).sum()) for b in range(10)]
    report = EvalReport(
        auc=mean_auc,
        fold_aucs=fold_aucs,
        per_decile_accuracy=deciles,
        weighted_overall_accuracy=weighted_overall_accuracy(deciles, weights),
        threshold=threshold_report.threshold,
        fp_rate=threshold_report.fp_rate,
        fn_rate=threshold_report.fn_rate,
    )
    if args.out:
        _write_json(args.out, report.to_dict())
    print("seed %d" % args.seed)
    for i, value in enumerate(fold_aucs):
        print("fold %d auc %.4f" % (i, value))
    print("mean auc %.4f" % mean_auc)


def cmd_score(args) -> None:
    model = load_model(args.model)
    registry = _registry_from_model(model)
    rows = []
    for bundle in iter_bundles(args.bundles):
        vector = registry.extract(bundle)
        rows.append((bundle.user.user_id,
                     float(score_matrix(model, vector.values[None, :])[0])))
    if not rows:
        raise DataError("no valid bundles in %s" % args.bundles)
    _write_scores(args.out, rows)
    print("scored %d accounts" % len(rows))


def cmd_threshold(args) -> None:
    score_rows = _read_scores(args.scores)
    labels = _labels_for([uid for uid, _ in score_rows], read_labels(args.labels))
    report = infer_threshold([v for _, v in score_rows], labels)
    print("threshold %s" % repr(report.threshold))
    print("accuracy %.4f fp_rate %.4f fn_rate %.4f"
          % (report.accuracy, report.fp_rate, report.fn_rate))
    if args.out:
        _write_json(args.out, {
            "threshold": report.threshold,
            "accuracy": report.accuracy,
            "fp_rate": report.fp_rate,
            "fn_rate": report.fn_rate,
        })


def cmd_estimate(args) -> None:
    model = load_model(args.model)
    registry = _registry_from_model(model)
    threshold = args.threshold if args.threshold is not None else model.threshold
    if threshold is None:
        raise DomainError("model stores no threshold; pass --threshold")
    estimate = estimate_population(
        model, iter_bundles(args.bundles), registry, threshold
    )
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["bin_low", "bin_high", "count"])
        for low, high, count in estimate.histogram_rows():
            writer.writerow([repr(low), repr(high), count])
    print("threshold %s" % repr(float(threshold)))
    print("bot_fraction %.4f of %d accounts" % (estimate.bot_fraction, estimate.total))


def cmd_agreement(args) -> None:
    labels_a = read_labels(args.labels_a)
    labels_b = read_labels(args.labels_b)
    common = [uid for uid in labels_a if uid in labels_b]
    decided = [uid for uid in common
               if labels_a[uid] != LABEL_UNDECIDED and labels_b[uid] != LABEL_UNDECIDED]
    if not decided:
        raise DomainError("no co-labeled accounts with decided labels")
    seq_a = [labels_a[uid] for uid in decided]
    seq_b = [labels_b[uid] for uid in decided]
    model_agreement = None
    model_kappa = None
    if args.scores:
        scores = dict(_read_scores(args.scores))
        missing = [uid for uid in decided if uid not in scores]
        if missing:
            raise DataError("no score for account %s" % missing[0])
        model_labels = ["bot" if scores[uid] >= 0.5 else "human" for uid in decided]
        model_agreement = float(np.mean([
            pairwise_agreement(seq, model_labels) for seq in (seq_a, seq_b)
        ]))
        model_kappa = float(np.mean([
            cohens_kappa(seq, model_labels) for seq in (seq_a, seq_b)
        ]))
    report = AgreementReport(
        pairwise_agreement=pairwise_agreement(seq_a, seq_b),
        cohens_kappa=cohens_kappa(seq_a, seq_b),
        annotator_vs_model_agreement=model_agreement,
        annotator_vs_model_kappa=model_kappa,
    )
    if args.out:
        _write_json(args.out, report.to_dict())
    print("items %d agreement %.4f kappa %.4f"
          % (len(decided), report.pairwise_agreement, report.cohens_kappa))
    if model_agreement is not None:
        print("vs-model agreement %.4f kappa %.4f" % (model_agreement, model_kappa))


def cmd_profiles(args) -> None:
    scores = dict(_read_scores(args.scores))
    rows = []
    dropped = 0
    if args.edges:
        connectivity, skipped = connectivity_profiles(scores, read_edges(args.edges))
        rows.extend(profiles_to_rows(connectivity))
        dropped += skipped
    flow, skipped = flow_profiles(scores, iter_bundles(args.bundles))
    rows.extend(profiles_to_rows(flow))
    dropped += skipped
    with open(args.out, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["interval", "relation", "bin_low", "bin_high", "count"])
        for low, high, relation, bin_low, bin_high, count in rows:
            writer.writerow(["%s-%s" % (repr(low), repr(high)), relation,
                             repr(bin_low), repr(bin_high), count])
    print("wrote %d histogram rows (%d unscored pairs dropped)"
          % (len(rows), dropped))


def cmd_cluster(args) -> None:
    ids, names, X = _read_features(args.features)
    labels = _labels_for(ids, read_labels(args.labels))
    scores = dict(_read_scores(args.scores))
    missing = [uid for uid in ids if uid not in scores]
    if missing:
        raise DataError("no score for account %s" % missing[0])
    by_id = {b.user.user_id: b for b in load_bundles(args.bundles)}
    missing = [uid for uid in ids if uid not in by_id]
    if missing:
        raise DataError("no bundle for account %s" % missing[0])
    bundles = [by_id[uid] for uid in ids]

    ranking = importance_ranking(
        X, labels, runs=args.importance_runs, seed=args.seed,
        params=TrainParams(n_trees=args.trees),
    )
    report = kmeans_cluster(
        X, ranking, top_features=args.top_features, k=args.k, seed=args.seed
    )
    summaries = cluster_summaries(
        report, bundles, [scores[uid] for uid in ids], names, seed=args.seed
    )
    data = report.to_dict()
    data["user_ids"] = ids
    data["summaries"] = summaries
    data["seed"] = args.seed
    _write_json(args.out, data)
    print("seed %d" % args.seed)
    silhouette = ("%.4f" % report.silhouette
                  if report.silhouette is not None else "undefined")
    print("k %d inertia %.4f silhouette %s" % (report.k, report.inertia, silhouette))


def cmd_registry(args) -> None:
    registry = _registry_from_args(args)
    _write_json(args.out, registry.to_manifest())
    print("%d features, fingerprint %s" % (len(registry), registry.fingerprint))


def cmd_serve(args) -> None:
    import uvicorn

    from .service import ServiceConfig, ServiceState, create_app

    model = load_model(args.model)
    bundles = load_bundles(args.bundles)
    base_dataset = None
    if args.labels:
        labels = read_labels(args.labels)
        entries = tuple(
            (b, labels[b.user.user_id])
            for b in bundles
            if labels.get(b.user.user_id) in ("human", "bot")
        )
        if not entries:
            raise DataError("labels file matches no bundles")
        base_dataset = LabeledDataset(entries=entries, source_tag="base")
    state = ServiceState(
        ServiceConfig(
            data_dir=Path(args.data_dir),
            overlap_target=args.overlap_target,
            decile_quota=args.quota,
            seed=args.seed,
        ),
        bundles,
        base_dataset=base_dataset,
        initial_model=model,
    )
    app = create_app(state)
    print("seed %d" % args.seed)
    print("serving model v%d on %s:%d" % (state.version, args.host, args.port),
          flush=True)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


def _add_registry_flags(parser) -> None:
    parser.add_argument("--language-free", action="store_true",
                        help="drop content and sentiment features")
    parser.add_argument("--include-retweet-text", action="store_true",
                        help="analyze retweeted text as the account's own")


def _add_train_flags(parser) -> None:
    parser.add_argument("--trees", type=int, default=100)
    parser.add_argument("--max-depth", type=int, default=None)
    parser.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="botdetect",
        description="Social-bot detection pipeline: corpus, features, "
                    "forest, evaluation, annotation service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="normalize raw JSONL into bundles")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=[BUNDLE_FORMAT, TWEETS_FORMAT],
                   default=BUNDLE_FORMAT)
    p.add_argument("--activity-filter", action="store_true",
                   help="keep only accounts with enough recent activity")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("synth", help="generate a labeled synthetic corpus")
    p.add_argument("--humans", type=int, default=200)
    p.add_argument("--simple-bots", type=int, default=200)
    p.add_argument("--sophisticated-bots", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("extract", help="extract feature vectors to CSV")
    p.add_argument("--bundles", required=True)
    _add_registry_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("train", help="train a forest on extracted features")
    p.add_argument("--features", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_train_flags(p)
    _add_registry_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("cv", help="stratified cross-validated evaluation")
    p.add_argument("--features", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    _add_train_flags(p)
    p.add_argument("--out", default=None, help="optional eval_report.json path")
    p.set_defaults(func=cmd_cv)

    p = sub.add_parser("score", help="score bundles with a trained model")
    p.add_argument("--model", required=True)
    p.add_argument("--bundles", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("threshold", help="accuracy-maximizing threshold")
    p.add_argument("--scores", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("estimate", help="bot-population estimate over a corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--bundles", required=True)
    p.add_argument("--threshold", type=float, default=None,
                   help="override the threshold stored in the model")
    p.add_argument("--out", required=True, help="score histogram CSV path")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("agreement", help="agreement between two label files")
    p.add_argument("--labels-a", required=True)
    p.add_argument("--labels-b", required=True)
    p.add_argument("--scores", default=None,
                   help="optional scores for annotator-vs-model agreement")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_agreement)

    p = sub.add_parser("profiles",
                       help="neighbor score histograms per score interval")
    p.add_argument("--bundles", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--edges", default=None,
                   help="edges CSV enabling friend and follower relations")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_profiles)

    p = sub.add_parser("cluster", help="k-means in top-feature space")
    p.add_argument("--features", required=True)
    p.add_argument("--labels", required=True)
    p.add_argument("--scores", required=True)
    p.add_argument("--bundles", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--top-features", type=int, default=100)
    p.add_argument("--importance-runs", type=int, default=10)
    p.add_argument("--trees", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("registry", help="write the feature registry manifest")
    _add_registry_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_registry)

    p = sub.add_parser("serve", help="run the scoring and annotation service")
    p.add_argument("--model", required=True)
    p.add_argument("--bundles", required=True)
    p.add_argument("--labels", default=None,
                   help="labels enabling per-class sub-scores and retraining")
    p.add_argument("--data-dir", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--overlap-target", type=float, default=0.10)
    p.add_argument("--quota", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (BotDetectError, OSError, json.JSONDecodeError,
            UnicodeDecodeError, csv.Error) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

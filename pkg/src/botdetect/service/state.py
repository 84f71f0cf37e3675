"""State machine behind the annotation service.

All durable state lives in the data directory as append-only JSON-Lines
logs plus versioned model files:

    models/vN.model.json    full model, one file per version
    models/vN.classes.json  per-feature-class sub-models for version N
    queue_init.json         frozen scores and decile pools for the campaign
    assignments.log.jsonl   one record per (account, annotator) serve
    annotations.log.jsonl   one record per submitted annotation

Replaying the two logs on top of queue_init.json reconstructs the exact
queue and agreement state, so restarts are lossless and tests can assert
the reconstruction directly.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Optional

import numpy as np

from ..corpus import (
    LABEL_BOT,
    LABEL_HUMAN,
    LABEL_UNDECIDED,
    AccountBundle,
    LabeledDataset,
    mix_datasets,
    parse_timestamp,
)
from ..corpus.io import bundle_from_dict, format_timestamp, user_to_dict
from ..errors import (
    BotDetectError,
    CompatibilityError,
    ConfigError,
    DataError,
    DegenerateModelError,
    DomainError,
    EmptyDatasetError,
    SamplingError,
    TrainingError,
)
from ..evaluation import infer_threshold, labels_to_binary
from ..features import FeatureRegistry, RegistryConfig
from ..forest import (
    ForestModel,
    load_model,
    model_from_dict,
    model_to_dict,
    save_model,
    score,
    score_matrix,
    train,
)

N_DECILES = 10
VALID_ANNOTATION_LABELS = (LABEL_HUMAN, LABEL_BOT, LABEL_UNDECIDED)
MODEL_AGREEMENT_THRESHOLD = 0.5

# Seed-stream tags keeping pool sampling and serve draws independent.
_POOL_STREAM = 1
_DRAW_STREAM = 2


class ApiError(BotDetectError):
    """Error carrying the HTTP status and machine-readable code."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


@dataclass(frozen=True)
class ServiceConfig:
    data_dir: Path
    overlap_target: float = 0.10
    decile_quota: int = 300
    seed: int = 0

    def validate(self) -> None:
        if not 0.0 <= self.overlap_target < 1.0:
            raise ConfigError("overlap_target must be in [0, 1)")
        if self.decile_quota <= 0:
            raise ConfigError("decile_quota must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")


def score_decile(value: float) -> int:
    return min(int(value * N_DECILES), N_DECILES - 1)


def build_pools(
    scores: dict[str, float], quota: int, seed: int
) -> list[list[str]]:
    """Sample up to ``quota`` account ids per score decile.

    Candidates are bucketed by decile, then each bucket is shuffled with
    its own seeded generator and truncated.  Pool order is the serving
    order for fresh items.
    """
    buckets: list[list[str]] = [[] for _ in range(N_DECILES)]
    for account_id in sorted(scores):
        buckets[score_decile(scores[account_id])].append(account_id)
    pools: list[list[str]] = []
    for d, bucket in enumerate(buckets):
        rng = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence([seed, _POOL_STREAM, d]))
        )
        order = rng.permutation(len(bucket))
        pools.append([bucket[int(i)] for i in order[:quota]])
    return pools


def _canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


class ServiceState:
    """In-memory view of one annotation campaign, rebuilt from disk."""

    def __init__(
        self,
        config: ServiceConfig,
        bundles: list[AccountBundle],
        base_dataset: Optional[LabeledDataset] = None,
        initial_model: Optional[ForestModel] = None,
    ):
        config.validate()
        self.config = config
        self.data_dir = Path(config.data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self.models_dir = self.data_dir / "models"
        self.models_dir.mkdir(exist_ok=True)
        self._lock = threading.Lock()

        self.bundles_by_id: dict[str, AccountBundle] = {}
        for bundle in bundles:
            if bundle.user.user_id in self.bundles_by_id:
                raise DataError("duplicate account id %s" % bundle.user.user_id)
            self.bundles_by_id[bundle.user.user_id] = bundle
        self.base_dataset = base_dataset

        self.version = 0
        self.model: Optional[ForestModel] = None
        self._load_or_install_model(initial_model)
        registry_config = RegistryConfig()
        if self.model is not None:
            stored = self.model.metadata.get("registry", {})
            registry_config = RegistryConfig(
                language_free=bool(stored.get("language_free", False)),
                include_retweet_text=bool(stored.get("include_retweet_text", False)),
            )
        self.registry = FeatureRegistry(registry_config)
        if self.model is not None:
            if self.model.registry_fingerprint != self.registry.fingerprint:
                raise ConfigError(
                    "model registry fingerprint does not match the feature "
                    "registry built from its metadata"
                )

        self.scores: dict[str, float] = {}
        self.pools: list[list[str]] = [[] for _ in range(N_DECILES)]
        self._decile_of: dict[str, int] = {}
        self._class_models: dict[str, ForestModel] = {}
        if self.model is not None:
            self._init_queue()
            self._init_class_models()

        self._served_by: dict[str, set[str]] = {}
        self._serves_of: dict[str, list[str]] = {}
        self._annotations: dict[tuple[str, str], dict] = {}
        self._pending: dict[str, str] = {}
        self._pool_pos = [0] * N_DECILES
        self._next_decile = 0
        self._total_serves = 0
        self._overlap_serves = 0
        self._replay_logs()

    # -- boot ----------------------------------------------------------

    def _model_path(self, version: int) -> Path:
        return self.models_dir / ("v%d.model.json" % version)

    def _classes_path(self, version: int) -> Path:
        return self.models_dir / ("v%d.classes.json" % version)

    def _load_or_install_model(self, initial_model: Optional[ForestModel]) -> None:
        versions = []
        for path in self.models_dir.glob("v*.model.json"):
            stem = path.name[1 : -len(".model.json")]
            if stem.isdigit():
                versions.append(int(stem))
        if versions:
            # Existing campaign directory wins over the passed-in model.
            self.version = max(versions)
            self.model = load_model(self._model_path(self.version))
        elif initial_model is not None:
            save_model(initial_model, self._model_path(1))
            self.version = 1
            self.model = initial_model

    def _init_queue(self) -> None:
        init_path = self.data_dir / "queue_init.json"
        if init_path.exists():
            data = json.loads(init_path.read_text(encoding="utf-8"))
            checks = (
                data.get("seed") == self.config.seed,
                data.get("decile_quota") == self.config.decile_quota,
                data.get("overlap_target") == self.config.overlap_target,
                data.get("registry_fingerprint") == self.registry.fingerprint,
                set(data.get("scores", {})) == set(self.bundles_by_id),
            )
            if not all(checks):
                raise ConfigError(
                    "queue_init.json was created with different settings; "
                    "use a fresh data directory"
                )
            self.scores = {k: float(v) for k, v in data["scores"].items()}
            self.pools = [list(pool) for pool in data["pools"]]
        else:
            self.scores = {
                uid: score(self.model, self.registry.extract(bundle))
                for uid, bundle in sorted(self.bundles_by_id.items())
            }
            self.pools = build_pools(
                self.scores, self.config.decile_quota, self.config.seed
            )
            init_path.write_text(
                _canonical_json(
                    {
                        "decile_quota": self.config.decile_quota,
                        "model_version": self.version,
                        "overlap_target": self.config.overlap_target,
                        "pools": self.pools,
                        "registry_fingerprint": self.registry.fingerprint,
                        "scores": self.scores,
                        "seed": self.config.seed,
                    }
                )
                + "\n",
                encoding="utf-8",
            )
        for d, pool in enumerate(self.pools):
            for uid in pool:
                self._decile_of[uid] = d

    def _train_class_models(
        self, X: np.ndarray, y: np.ndarray, seed: int
    ) -> dict[str, ForestModel]:
        models = {}
        for cls in self.registry.classes:
            sub = np.ascontiguousarray(X[:, self.registry.class_slice(cls)])
            models[cls.value] = train(
                sub, y, params=self.model.params, seed=seed
            )
        return models

    def _init_class_models(self) -> None:
        path = self._classes_path(self.version)
        if path.exists():
            data = json.loads(path.read_text(encoding="utf-8"))
            self._class_models = {
                name: model_from_dict(entry)
                for name, entry in data["models"].items()
            }
            expected = {cls.value for cls in self.registry.classes}
            if set(self._class_models) != expected:
                raise ConfigError("per-class model file does not match registry")
            return
        if self.base_dataset is None:
            return
        X = self.registry.extract_matrix(self.base_dataset.bundles)
        y = labels_to_binary(self.base_dataset.labels)
        self._class_models = self._train_class_models(X, y, self.model.seed)
        self._write_class_models(self.version)

    def _write_class_models(self, version: int) -> None:
        payload = {
            "models": {
                name: model_to_dict(m) for name, m in self._class_models.items()
            }
        }
        self._classes_path(version).write_text(
            _canonical_json(payload) + "\n", encoding="utf-8"
        )

    # -- log replay ----------------------------------------------------

    def _read_log(self, name: str) -> list[dict]:
        path = self.data_dir / name
        if not path.exists():
            return []
        records = []
        with open(path, "r", encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if line:
                    records.append(json.loads(line))
        return records

    def _append_log(self, name: str, record: dict) -> None:
        with open(self.data_dir / name, "a", encoding="utf-8") as handle:
            handle.write(_canonical_json(record) + "\n")

    def _apply_assignment(self, record: dict) -> None:
        account = record["account_id"]
        annotator = record["annotator_id"]
        if account not in self._decile_of:
            raise DataError("assignment log references unknown account %s" % account)
        self._served_by.setdefault(account, set()).add(annotator)
        self._serves_of.setdefault(annotator, []).append(account)
        self._total_serves += 1
        if record["overlap"]:
            self._overlap_serves += 1
        else:
            decile = self._decile_of[account]
            pool = self.pools[decile]
            if self._pool_pos[decile] >= len(pool) or pool[self._pool_pos[decile]] != account:
                raise DataError("assignment log disagrees with pool order")
            self._pool_pos[decile] += 1
            self._next_decile = (decile + 1) % N_DECILES

    def _replay_logs(self) -> None:
        for record in self._read_log("assignments.log.jsonl"):
            self._apply_assignment(record)
        for record in self._read_log("annotations.log.jsonl"):
            key = (record["account_id"], record["annotator_id"])
            if key[1] not in self._served_by.get(key[0], set()):
                raise DataError("annotation log entry without a matching serve")
            if key in self._annotations:
                raise DataError("duplicate annotation in log for %s/%s" % key)
            self._annotations[key] = record
        for annotator, accounts in self._serves_of.items():
            open_items = [
                uid for uid in accounts if (uid, annotator) not in self._annotations
            ]
            if len(open_items) > 1:
                raise DataError("annotator %s has multiple open serves" % annotator)
            if open_items:
                self._pending[annotator] = open_items[0]

    # -- scoring -------------------------------------------------------

    def _snapshot_model(self):
        with self._lock:
            return self.model, self.version, dict(self._class_models)

    def score_bundle(self, payload) -> dict:
        model, version, class_models = self._snapshot_model()
        if model is None:
            raise ApiError(503, "no_model", "no model loaded")
        if not isinstance(payload, dict):
            raise ApiError(400, "malformed_bundle", "body must be a JSON object")
        asserted = payload.get("registry_fingerprint")
        if asserted is not None and asserted != self.registry.fingerprint:
            raise ApiError(
                409,
                "fingerprint_mismatch",
                "request expects registry %s, service has %s"
                % (asserted, self.registry.fingerprint),
            )
        try:
            bundle = bundle_from_dict(
                {k: v for k, v in payload.items() if k != "registry_fingerprint"}
            )
            vector = self.registry.extract(bundle)
        except DataError as exc:
            raise ApiError(400, "malformed_bundle", str(exc))
        try:
            full = score(model, vector)
        except CompatibilityError as exc:
            raise ApiError(409, "fingerprint_mismatch", str(exc))
        subscores = {}
        for cls in self.registry.classes:
            sub_model = class_models.get(cls.value)
            if sub_model is None:
                continue
            row = vector.values[None, self.registry.class_slice(cls)]
            subscores[cls.value] = float(
                score_matrix(sub_model, np.ascontiguousarray(row))[0]
            )
        return {
            "score": full,
            "class_subscores": subscores,
            "registry_fingerprint": self.registry.fingerprint,
            "model_version": "v%d" % version,
        }

    # -- queue ---------------------------------------------------------

    def _require_queue(self) -> None:
        if self.model is None:
            raise ApiError(503, "no_model", "no model loaded; queue unavailable")

    def _digest(self, account_id: str) -> dict:
        bundle = self.bundles_by_id[account_id]
        timeline = sorted(bundle.timeline, key=lambda t: (t.created_at, t.tweet_id))
        sample = [
            {
                "created_at": format_timestamp(t.created_at),
                "is_retweet": t.is_retweet,
                "text": t.text,
            }
            for t in timeline[-10:]
        ]
        hashtags = {tag for t in timeline for tag in t.hashtags}
        return {
            "user": user_to_dict(bundle.user),
            "timeline_tweets": len(timeline),
            "retweets": sum(1 for t in timeline if t.is_retweet),
            "mentions": sum(1 for t in timeline if t.mentions),
            "replies": sum(1 for t in timeline if t.in_reply_to_user_id is not None),
            "mentions_of_account": len(bundle.mentions_of_user),
            "distinct_hashtags": len(hashtags),
            "sample_tweets": sample,
        }

    def _serve_response(self, account_id: str) -> dict:
        return {
            "account_id": account_id,
            "decile": self._decile_of[account_id],
            "digest": self._digest(account_id),
        }

    def _next_fresh(self) -> Optional[tuple[int, str]]:
        for step in range(N_DECILES):
            decile = (self._next_decile + step) % N_DECILES
            if self._pool_pos[decile] < len(self.pools[decile]):
                return decile, self.pools[decile][self._pool_pos[decile]]
        return None

    def next_item(self, annotator_id: str) -> dict:
        self._require_queue()
        if not annotator_id:
            raise ApiError(400, "missing_annotator", "annotator id is required")
        with self._lock:
            pending = self._pending.get(annotator_id)
            if pending is not None:
                return self._serve_response(pending)

            fresh = self._next_fresh()
            overlap_pool = sorted(
                uid
                for uid, servers in self._served_by.items()
                if annotator_id not in servers
            )
            if fresh is None and not overlap_pool:
                raise ApiError(404, "queue_exhausted", "no items left to serve")

            rng = np.random.Generator(
                np.random.PCG64(
                    np.random.SeedSequence(
                        [self.config.seed, _DRAW_STREAM, self._total_serves]
                    )
                )
            )
            choose_overlap = False
            if overlap_pool:
                floor_needed = math.floor(
                    self.config.overlap_target * (self._total_serves + 1) + 1e-9
                )
                if self._overlap_serves < floor_needed:
                    choose_overlap = True
                elif fresh is None:
                    choose_overlap = True
                elif rng.random() < self.config.overlap_target:
                    choose_overlap = True

            if choose_overlap:
                account = overlap_pool[int(rng.integers(len(overlap_pool)))]
            else:
                decile, account = fresh
            record = {
                "account_id": account,
                "annotator_id": annotator_id,
                "decile": self._decile_of[account],
                "overlap": choose_overlap,
            }
            self._append_log("assignments.log.jsonl", record)
            self._apply_assignment(record)
            self._pending[annotator_id] = account
            return self._serve_response(account)

    def submit_annotation(self, payload) -> dict:
        self._require_queue()
        if not isinstance(payload, dict):
            raise ApiError(422, "invalid_record", "body must be a JSON object")
        account_id = payload.get("account_id")
        annotator_id = payload.get("annotator_id")
        if not isinstance(account_id, str) or not account_id:
            raise ApiError(422, "invalid_record", "account_id is required")
        if not isinstance(annotator_id, str) or not annotator_id:
            raise ApiError(422, "invalid_record", "annotator_id is required")
        label = payload.get("label")
        if label not in VALID_ANNOTATION_LABELS:
            raise ApiError(
                422,
                "unknown_label",
                "label must be one of %s" % (VALID_ANNOTATION_LABELS,),
            )
        elapsed = payload.get("elapsed_seconds")
        if isinstance(elapsed, bool) or not isinstance(elapsed, (int, float)):
            raise ApiError(422, "invalid_record", "elapsed_seconds must be a number")
        if not math.isfinite(elapsed) or elapsed < 0:
            raise ApiError(422, "invalid_record", "elapsed_seconds must be >= 0")
        created_at = payload.get("created_at")
        try:
            parse_timestamp(created_at if isinstance(created_at, str) else "")
        except DataError:
            raise ApiError(
                422, "invalid_record", "created_at must be a UTC timestamp"
            )

        with self._lock:
            if annotator_id not in self._served_by.get(account_id, set()):
                raise ApiError(
                    403,
                    "not_served",
                    "account %s was not served to annotator %s"
                    % (account_id, annotator_id),
                )
            key = (account_id, annotator_id)
            if key in self._annotations:
                raise ApiError(
                    409, "duplicate_annotation", "annotation already recorded"
                )
            record = {
                "account_id": account_id,
                "annotator_id": annotator_id,
                "label": label,
                "elapsed_seconds": float(elapsed),
                "created_at": created_at,
            }
            self._append_log("annotations.log.jsonl", record)
            self._annotations[key] = record
            if self._pending.get(annotator_id) == account_id:
                del self._pending[annotator_id]
            return dict(record, recorded=True)

    # -- reporting -----------------------------------------------------

    def agreement(self) -> dict:
        """Pairwise agreement, kappa, and annotator-vs-model agreement.

        Kappa is the two-rater statistic per annotator pair, averaged over
        pairs that share at least one decided item; with two annotators it
        is exactly the single-pair value.  Undecided labels are dropped.
        """
        with self._lock:
            records = list(self._annotations.values())
        by_annotator: dict[str, dict[str, str]] = {}
        for record in records:
            by_annotator.setdefault(record["annotator_id"], {})[
                record["account_id"]
            ] = record["label"]

        from ..evaluation import cohens_kappa, pairwise_agreement

        pairs = []
        overlap_accounts = set()
        for a, b in combinations(sorted(by_annotator), 2):
            common = sorted(
                uid
                for uid in set(by_annotator[a]) & set(by_annotator[b])
                if by_annotator[a][uid] != LABEL_UNDECIDED
                and by_annotator[b][uid] != LABEL_UNDECIDED
            )
            if not common:
                continue
            labels_a = [by_annotator[a][uid] for uid in common]
            labels_b = [by_annotator[b][uid] for uid in common]
            pairs.append(
                {
                    "annotator_a": a,
                    "annotator_b": b,
                    "items": len(common),
                    "agreement": pairwise_agreement(labels_a, labels_b),
                    "kappa": cohens_kappa(labels_a, labels_b),
                }
            )
            overlap_accounts.update(common)
        if not pairs:
            raise ApiError(
                409, "no_overlap", "no co-annotated accounts with decided labels yet"
            )

        per_annotator_model = {}
        for annotator, labels in sorted(by_annotator.items()):
            decided = [
                (uid, lbl) for uid, lbl in labels.items() if lbl != LABEL_UNDECIDED
            ]
            if not decided:
                continue
            agree = sum(
                1
                for uid, lbl in decided
                if (
                    LABEL_BOT
                    if self.scores[uid] >= MODEL_AGREEMENT_THRESHOLD
                    else LABEL_HUMAN
                )
                == lbl
            )
            per_annotator_model[annotator] = agree / len(decided)

        elapsed_by_label: dict[str, list[float]] = {}
        for record in records:
            elapsed_by_label.setdefault(record["label"], []).append(
                record["elapsed_seconds"]
            )
        return {
            "annotations": len(records),
            "annotators": len(by_annotator),
            "overlap_items": len(overlap_accounts),
            "mean_agreement": sum(p["agreement"] for p in pairs) / len(pairs),
            "kappa": sum(p["kappa"] for p in pairs) / len(pairs),
            "pairs": pairs,
            "model_agreement": {
                "mean": (
                    sum(per_annotator_model.values()) / len(per_annotator_model)
                    if per_annotator_model
                    else None
                ),
                "per_annotator": per_annotator_model,
            },
            "mean_elapsed_by_label": {
                label: sum(values) / len(values)
                for label, values in sorted(elapsed_by_label.items())
            },
        }

    def progress(self) -> dict:
        self._require_queue()
        with self._lock:
            annotated_accounts = {key[0] for key in self._annotations}
            deciles = []
            for d, pool in enumerate(self.pools):
                served = sum(1 for uid in pool if uid in self._served_by)
                annotated = sum(1 for uid in pool if uid in annotated_accounts)
                deciles.append(
                    {
                        "decile": d,
                        "pool": len(pool),
                        "served": served,
                        "annotated": annotated,
                        "complete": annotated >= len(pool),
                    }
                )
            return {
                "deciles": deciles,
                "pool_total": sum(len(pool) for pool in self.pools),
                "served_accounts": len(self._served_by),
                "annotations": len(self._annotations),
                "total_serves": self._total_serves,
                "overlap_serves": self._overlap_serves,
                "overlap_fraction": (
                    self._overlap_serves / self._total_serves
                    if self._total_serves
                    else 0.0
                ),
            }

    def histogram(self) -> dict:
        self._require_queue()
        counts = [0] * N_DECILES
        for value in self.scores.values():
            counts[score_decile(value)] += 1
        return {
            "bins": [
                {
                    "bin_low": d / N_DECILES,
                    "bin_high": (d + 1) / N_DECILES,
                    "count": counts[d],
                }
                for d in range(N_DECILES)
            ],
            "total": len(self.scores),
        }

    def queue_snapshot(self) -> dict:
        """Canonical queue view for equality checks across restarts."""
        with self._lock:
            return {
                "served_by": {
                    uid: sorted(servers)
                    for uid, servers in sorted(self._served_by.items())
                },
                "pending": dict(sorted(self._pending.items())),
                "annotation_keys": sorted(
                    "%s/%s" % key for key in self._annotations
                ),
                "pool_positions": list(self._pool_pos),
                "next_decile": self._next_decile,
                "total_serves": self._total_serves,
                "overlap_serves": self._overlap_serves,
            }

    # -- retraining ----------------------------------------------------

    def _majority_labels(self) -> dict[str, str]:
        """Strict-majority label per annotated account; ties and undecided
        majorities are dropped."""
        by_account: dict[str, list[str]] = {}
        for (account_id, _), record in self._annotations.items():
            by_account.setdefault(account_id, []).append(record["label"])
        resolved = {}
        for account_id, labels in by_account.items():
            counts = {label: labels.count(label) for label in set(labels)}
            top = max(counts.values())
            winners = [label for label, c in counts.items() if c == top]
            if len(winners) != 1 or top * 2 <= len(labels):
                continue
            if winners[0] in (LABEL_HUMAN, LABEL_BOT):
                resolved[account_id] = winners[0]
        return resolved

    def retrain(self, mixture, seed) -> dict:
        if self.model is None:
            raise ApiError(503, "no_model", "no model loaded")
        if isinstance(mixture, bool) or not isinstance(mixture, (int, float)):
            raise ApiError(422, "invalid_mixture", "mixture must be a number")
        if not 0.0 <= mixture <= 1.0:
            raise ApiError(422, "invalid_mixture", "mixture must be in [0, 1]")
        if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
            raise ApiError(422, "invalid_seed", "seed must be a non-negative integer")
        if self.base_dataset is None:
            raise ApiError(
                409, "no_base_dataset", "service started without a labeled base set"
            )
        with self._lock:
            resolved = self._majority_labels()
            if not resolved:
                raise ApiError(
                    409,
                    "insufficient_labels",
                    "no majority-resolved human/bot annotations yet",
                )
            annotated = LabeledDataset(
                entries=tuple(
                    (self.bundles_by_id[uid], resolved[uid])
                    for uid in sorted(resolved)
                ),
                source_tag="annotations",
            )
            try:
                mixed = mix_datasets(
                    self.base_dataset,
                    annotated,
                    ratio_a=1.0 - float(mixture),
                    size=len(self.base_dataset),
                    seed=seed,
                )
            except (SamplingError, EmptyDatasetError) as exc:
                raise ApiError(409, "insufficient_labels", str(exc))
            try:
                X = self.registry.extract_matrix(mixed.bundles)
                y = labels_to_binary(mixed.labels)
                new_model = train(
                    X,
                    y,
                    params=self.model.params,
                    seed=seed,
                    registry_fingerprint=self.registry.fingerprint,
                    metadata=dict(self.model.metadata),
                )
                report = infer_threshold(score_matrix(new_model, X), mixed.labels)
                new_model = new_model.with_threshold(report.threshold)
                class_models = self._train_class_models(X, y, seed)
            except (TrainingError, DegenerateModelError, DomainError) as exc:
                raise ApiError(500, "training_failed", str(exc))
            version = self.version + 1
            save_model(new_model, self._model_path(version))
            self.model = new_model
            self.version = version
            self._class_models = class_models
            self._write_class_models(version)
            return {
                "model_version": "v%d" % version,
                "version": version,
                "threshold": report.threshold,
                "training_size": len(mixed),
                "annotated_accounts": len(resolved),
                "mixture": float(mixture),
                "seed": seed,
            }

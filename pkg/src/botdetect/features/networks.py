"""Ego interaction networks and their structural features.

Three networks per bundle: retweet and mention networks are directed,
with edges pointing toward the user doing the retweeting or being
mentioned (the direction information spreads); the hashtag network is
undirected, linking hashtags that co-occur within one tweet.  Edge
weights count repeated interactions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..corpus.types import AccountBundle
from ..stats import STAT_SUFFIXES, summarize

NETWORK_KINDS = ("retweet", "mention", "hashtag_cooccurrence")


@dataclass
class InteractionNetwork:
    kind: str
    directed: bool
    # Directed edges keyed (src, dst); undirected edges keyed with the
    # endpoints sorted.
    edges: dict[tuple[str, str], int] = field(default_factory=dict)
    nodes: set[str] = field(default_factory=set)

    def add_node(self, node: str) -> None:
        self.nodes.add(node)

    def add_edge(self, a: str, b: str, weight: int = 1) -> None:
        if a == b:
            return
        key = (a, b) if self.directed else (min(a, b), max(a, b))
        self.edges[key] = self.edges.get(key, 0) + weight
        self.nodes.add(a)
        self.nodes.add(b)

    def node_count(self) -> int:
        return len(self.nodes)

    def edge_count(self) -> int:
        return len(self.edges)


def build_networks(bundle: AccountBundle) -> dict[str, InteractionNetwork]:
    uid = bundle.user.user_id
    retweet = InteractionNetwork(kind="retweet", directed=True)
    mention = InteractionNetwork(kind="mention", directed=True)
    hashtag = InteractionNetwork(kind="hashtag_cooccurrence", directed=False)

    for tweet in bundle.timeline:
        if tweet.is_retweet and tweet.retweeted_author_id:
            # The user retweets someone: information flows into the user.
            retweet.add_edge(tweet.retweeted_author_id, uid)
        for m in tweet.mentions:
            if tweet.is_retweet and m == tweet.retweeted_author_id:
                continue
            mention.add_edge(uid, m)

    for tweet in bundle.mentions_of_user:
        author = tweet.author.user_id
        if tweet.is_retweet and tweet.retweeted_author_id == uid:
            # Someone retweets the user: flows into the retweeting author.
            retweet.add_edge(uid, author)
        for m in tweet.mentions:
            if tweet.is_retweet and m == tweet.retweeted_author_id:
                continue
            mention.add_edge(author, m)

    for tweet in list(bundle.timeline) + list(bundle.mentions_of_user):
        tags = sorted({tag.lower() for tag in tweet.hashtags})
        for tag in tags:
            hashtag.add_node(tag)
        for i in range(len(tags)):
            for j in range(i + 1, len(tags)):
                hashtag.add_edge(tags[i], tags[j])

    return {"retweet": retweet, "mention": mention, "hashtag_cooccurrence": hashtag}


def network_feature_names(kind: str) -> list[str]:
    names = ["%s_nodes" % kind, "%s_edges" % kind, "%s_reciprocal_dyads" % kind]
    for base in ("strength", "in_strength", "out_strength"):
        names.extend("%s_%s_%s" % (kind, base, s) for s in STAT_SUFFIXES)
    names.extend(
        (
            "%s_density" % kind,
            "%s_reciprocal_density" % kind,
            "%s_clustering" % kind,
            "%s_reciprocal_clustering" % kind,
        )
    )
    return names


def _mean_clustering(adjacency: dict[str, set[str]]) -> float:
    """Mean local clustering coefficient; degree < 2 nodes count as 0."""
    if not adjacency:
        return 0.0
    total = 0.0
    for node, neighbors in adjacency.items():
        k = len(neighbors)
        if k < 2:
            continue
        links = 0
        ordered = sorted(neighbors)
        for i, a in enumerate(ordered):
            adj_a = adjacency.get(a, set())
            for b in ordered[i + 1 :]:
                if b in adj_a:
                    links += 1
        total += 2.0 * links / (k * (k - 1))
    return total / len(adjacency)


def network_features(net: InteractionNetwork) -> list[float]:
    n = net.node_count()
    m = net.edge_count()

    in_strength: dict[str, float] = {v: 0.0 for v in net.nodes}
    out_strength: dict[str, float] = {v: 0.0 for v in net.nodes}
    undirected: dict[str, set[str]] = {v: set() for v in net.nodes}
    reciprocal_pairs: set[tuple[str, str]] = set()

    for (a, b), w in net.edges.items():
        if net.directed:
            out_strength[a] += w
            in_strength[b] += w
            if (b, a) in net.edges:
                reciprocal_pairs.add((min(a, b), max(a, b)))
        else:
            out_strength[a] += w
            out_strength[b] += w
            in_strength[a] += w
            in_strength[b] += w
            reciprocal_pairs.add((a, b))
        undirected[a].add(b)
        undirected[b].add(a)

    ordered = sorted(net.nodes)
    strength = [in_strength[v] + out_strength[v] for v in ordered]
    if not net.directed:
        # For undirected nets in/out coincide with plain strength.
        strength = [in_strength[v] for v in ordered]

    values = [float(n), float(m), float(len(reciprocal_pairs))]
    values.extend(summarize(strength).as_tuple())
    values.extend(summarize([in_strength[v] for v in ordered]).as_tuple())
    values.extend(summarize([out_strength[v] for v in ordered]).as_tuple())

    if n <= 1:
        values.extend((0.0, 0.0, 0.0, 0.0))
        return values

    pairs = n * (n - 1) / 2.0
    density = m / (n * (n - 1)) if net.directed else m / pairs
    reciprocal_density = len(reciprocal_pairs) / pairs

    reciprocal_adj: dict[str, set[str]] = {v: set() for v in net.nodes}
    for a, b in reciprocal_pairs:
        reciprocal_adj[a].add(b)
        reciprocal_adj[b].add(a)

    values.extend(
        (
            density,
            reciprocal_density,
            _mean_clustering(undirected),
            _mean_clustering(reciprocal_adj),
        )
    )
    return values


def network_names() -> list[str]:
    names = []
    for kind in NETWORK_KINDS:
        names.extend(network_feature_names(kind))
    return names


def extract_networks(bundle: AccountBundle) -> list[float]:
    nets = build_networks(bundle)
    values: list[float] = []
    for kind in NETWORK_KINDS:
        values.extend(network_features(nets[kind]))
    return values

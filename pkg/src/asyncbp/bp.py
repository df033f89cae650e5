"""Pearl belief-propagation message math and a loopy-BP runner.

Conventions used throughout the package:

* A conditional probability table for a node with parents (U_1 .. U_j) is an
  ndarray with axes (card(U_1), .., card(U_j), card(X)); the last axis ranges
  over the child.  A root node's table is a 1-D prior.
* π messages flow parent→child and carry a vector over the *parent's* domain;
  λ messages flow child→parent, also over the parent's domain.
* Every message is normalized to sum to 1 after computation.  Beliefs are
  invariant to this (the normalizing constant absorbs it) and it prevents
  underflow on long runs.
"""

from dataclasses import dataclass, field

import numpy as np

from . import errors

PI = "pi"
LAMBDA = "lambda"


def normalize(values: np.ndarray) -> np.ndarray:
    """Rescale a nonnegative vector to sum to 1; ZeroBelief if it cannot."""
    values = np.asarray(values, dtype=float)
    total = values.sum()
    if not np.isfinite(total) or total <= 0.0:
        raise errors.ZeroBelief(f"message or belief has no mass: {values}")
    return values / total


def _indicator(card: int, state: int) -> np.ndarray:
    if not 0 <= state < card:
        raise errors.DomainMismatch(f"observed state {state} outside domain of size {card}")
    out = np.zeros(card)
    out[state] = 1.0
    return out


def _contract_all_parents(table: np.ndarray, parent_pis) -> np.ndarray:
    """Sum_u P(x|u) * prod_i pi(u_i): contract every parent axis."""
    out = table
    for vec in parent_pis:
        if len(vec) != out.shape[0]:
            raise errors.DomainMismatch(
                f"pi message of length {len(vec)} against axis of size {out.shape[0]}")
        out = np.tensordot(vec, out, axes=(0, 0))
    return out


def pi_value(card: int, table: np.ndarray, parent_pis, observed: int | None = None) -> np.ndarray:
    """Causal support π(x): indicator under evidence, else the weighted CPT sum.

    `parent_pis` must hold one vector per parent axis of `table`; a root
    node's prior is `table` itself with no parents.
    """
    if observed is not None:
        return _indicator(card, observed)
    out = _contract_all_parents(table, parent_pis)
    if out.shape != (card,):
        raise errors.DomainMismatch(f"expected vector of length {card}, got shape {out.shape}")
    return out


def lambda_value(card: int, child_lambdas, observed: int | None = None) -> np.ndarray:
    """Diagnostic support λ(x): indicator under evidence, else the product of
    incoming child λ messages (all-ones for a non-evidence leaf)."""
    if observed is not None:
        return _indicator(card, observed)
    out = np.ones(card)
    for vec in child_lambdas:
        if len(vec) != card:
            raise errors.DomainMismatch(
                f"lambda message of length {len(vec)} for domain of size {card}")
        out = out * np.asarray(vec, dtype=float)
    return out


def pi_message(pi_of_u: np.ndarray, other_children_lambdas, scale: bool = True) -> np.ndarray:
    """Message π_X(U): π(u) times λ messages from U's children other than X."""
    out = np.asarray(pi_of_u, dtype=float)
    for vec in other_children_lambdas:
        if len(vec) != len(out):
            raise errors.DomainMismatch("lambda factor length mismatch in pi message")
        out = out * np.asarray(vec, dtype=float)
    return normalize(out) if scale else out


def lambda_message(table: np.ndarray, parent_axis: int, lambda_of_y: np.ndarray,
                   coparent_pis, scale: bool = True) -> np.ndarray:
    """Message λ_Y(X) to the parent on `parent_axis` of Y's table.

    Sums λ(y) against the table with every co-parent axis weighted by its π
    message.  `coparent_pis` lists vectors for the other parent axes in
    order, skipping `parent_axis`.
    """
    n_parents = table.ndim - 1
    vecs = list(coparent_pis)
    if len(vecs) != n_parents - 1:
        raise errors.DomainMismatch(
            f"expected {n_parents - 1} co-parent pi messages, got {len(vecs)}")
    out = table
    others = [ax for ax in range(n_parents) if ax != parent_axis]
    for ax, vec in zip(reversed(others), reversed(vecs)):
        if len(vec) != out.shape[ax]:
            raise errors.DomainMismatch("co-parent pi length mismatch in lambda message")
        out = np.tensordot(np.asarray(vec, dtype=float), out, axes=(0, ax))
    # axes now: (parent_axis domain, y domain)
    out = out @ np.asarray(lambda_of_y, dtype=float)
    return normalize(out) if scale else out


def belief(pi: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Bel(x) ∝ π(x)·λ(x); raises ZeroBelief on a contradiction."""
    pi = np.asarray(pi, dtype=float)
    lam = np.asarray(lam, dtype=float)
    if pi.shape != lam.shape:
        raise errors.DomainMismatch(f"pi shape {pi.shape} vs lambda shape {lam.shape}")
    return normalize(pi * lam)


@dataclass
class Network:
    """A directed network of discrete nodes with CPTs, for static LBP."""

    cards: dict = field(default_factory=dict)      # name -> cardinality
    parents: dict = field(default_factory=dict)    # name -> tuple of names
    tables: dict = field(default_factory=dict)     # name -> ndarray (*parent cards, card)
    children: dict = field(default_factory=dict)   # name -> list of names

    def add_node(self, name, card, parents=(), table=None):
        if name in self.cards:
            raise errors.SchemaError(f"duplicate node {name!r}")
        parents = tuple(parents)
        for p in parents:
            if p not in self.cards:
                raise errors.SchemaError(f"node {name!r} declares unknown parent {p!r}")
        table = np.asarray(table, dtype=float)
        want = tuple(self.cards[p] for p in parents) + (card,)
        if table.shape != want:
            raise errors.DomainMismatch(
                f"table for {name!r} has shape {table.shape}, expected {want}")
        self.cards[name] = card
        self.parents[name] = parents
        self.tables[name] = table
        self.children[name] = []
        for p in parents:
            self.children[p].append(name)
        return self

    @property
    def nodes(self):
        return list(self.cards)

    @property
    def edges(self):
        return [(u, x) for x in self.cards for u in self.parents[x]]

    def diameter(self) -> int:
        """Longest undirected shortest path, in edges (0 for a single node)."""
        best = 0
        names = self.nodes
        undirected = {n: set() for n in names}
        for u, x in self.edges:
            undirected[u].add(x)
            undirected[x].add(u)
        for start in names:
            dist = {start: 0}
            queue = [start]
            while queue:
                cur = queue.pop(0)
                for nxt in undirected[cur]:
                    if nxt not in dist:
                        dist[nxt] = dist[cur] + 1
                        queue.append(nxt)
            best = max(best, max(dist.values()))
        return best


@dataclass
class LbpResult:
    beliefs: dict
    messages: dict
    message_count: int


def _node_pi(net, store, ev, name):
    pis = [store[(p, name, PI)] for p in net.parents[name]]
    return pi_value(net.cards[name], net.tables[name], pis, ev.get(name))


def _node_lambda(net, store, ev, name):
    lams = [store[(c, name, LAMBDA)] for c in net.children[name]]
    return lambda_value(net.cards[name], lams, ev.get(name))


def lbp_run(net: Network, evidence: dict, iterations: int, schedule=None,
            normalize_messages: bool = True) -> LbpResult:
    """Run `iterations` synchronous sweeps of loopy BP and return beliefs.

    Each sweep recomputes one π and one λ message per directed edge from the
    previous sweep's messages (Jacobi order), so the message count is exactly
    iterations * 2 * len(net.edges).  On a loop-free network the beliefs are
    the exact posteriors once `iterations` reaches the network diameter.
    `normalize_messages=False` exists only to check that beliefs do not
    depend on message scaling; it underflows on long runs.
    """
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    for name, state in evidence.items():
        if name not in net.cards:
            raise errors.DomainMismatch(f"evidence on unknown node {name!r}")
        if not 0 <= state < net.cards[name]:
            raise errors.DomainMismatch(f"evidence {state} outside domain of {name!r}")
    order = list(schedule) if schedule is not None else net.nodes
    edges = [(u, x) for x in order for u in net.parents[x]]

    store = {}
    for u, x in edges:
        store[(u, x, PI)] = np.ones(net.cards[u])
        store[(x, u, LAMBDA)] = np.ones(net.cards[u])

    count = 0
    for _ in range(iterations):
        nxt = dict(store)
        for u, x in edges:
            pi_u = _node_pi(net, store, evidence, u)
            others = [store[(c, u, LAMBDA)] for c in net.children[u] if c != x]
            nxt[(u, x, PI)] = pi_message(pi_u, others, scale=normalize_messages)
            count += 1
        for u, x in edges:
            lam_x = _node_lambda(net, store, evidence, x)
            axis = net.parents[x].index(u)
            copis = [store[(p, x, PI)] for p in net.parents[x] if p != u]
            nxt[(x, u, LAMBDA)] = lambda_message(net.tables[x], axis, lam_x, copis,
                                                 scale=normalize_messages)
            count += 1
        store = nxt

    beliefs = {}
    for name in order:
        beliefs[name] = belief(_node_pi(net, store, evidence, name),
                               _node_lambda(net, store, evidence, name))
    return LbpResult(beliefs=beliefs, messages=store, message_count=count)


def exact_enumerate(net: Network, evidence: dict, max_states: int = 10 ** 6) -> dict:
    """Exact posterior marginals by summing the full joint distribution."""
    names = net.nodes
    for name, state in evidence.items():
        if name not in net.cards:
            raise errors.DomainMismatch(f"evidence on unknown node {name!r}")
        if not 0 <= state < net.cards[name]:
            raise errors.DomainMismatch(f"evidence {state} outside domain of {name!r}")
    cards = [net.cards[n] for n in names]
    total = 1
    for c in cards:
        total *= c
        if total > max_states:
            raise errors.TooLarge(f"joint state space exceeds {max_states}")
    index = {n: i for i, n in enumerate(names)}
    marginals = {n: np.zeros(net.cards[n]) for n in names}
    mass = 0.0
    for assignment in np.ndindex(*cards):
        skip = False
        for name, state in evidence.items():
            if assignment[index[name]] != state:
                skip = True
                break
        if skip:
            continue
        w = 1.0
        for n in names:
            idx = tuple(assignment[index[p]] for p in net.parents[n]) + (assignment[index[n]],)
            w *= net.tables[n][idx]
            if w == 0.0:
                break
        if w == 0.0:
            continue
        mass += w
        for n in names:
            marginals[n][assignment[index[n]]] += w
    if mass <= 0.0:
        raise errors.ZeroBelief("evidence has zero probability under the model")
    return {n: marginals[n] / mass for n in names}

"""Invariant and reducing subspaces for linear relations.

A subspace K is invariant when the domain and multivalued part split
orthogonally across K and its complement and the restricted part has the
expected domain; K reduces T when T is the orthogonal sum of its
restrictions to K and to the complement.  Reduction is preserved by the
adjoint and by the Z transform at +-i, and ``reduction_certificates``
verifies all of that for a given pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .relation import Relation, doubled
from .subspace import DEFAULT_TOL, Subspace, ToleranceConfig
from .ztransform import z_transform

__all__ = [
    "InvarianceCheck",
    "ReductionReport",
    "is_invariant",
    "is_reducing",
    "orthogonal_relation_sum",
    "compress",
    "embed",
    "adjoint_within",
    "reduction_certificates",
]


@dataclass(frozen=True)
class InvarianceCheck:
    """Outcome of the three invariance conditions, individually attributable."""

    domain_splits: bool
    multivalued_splits: bool
    restriction_domain_matches: bool
    residuals: dict

    @property
    def ok(self) -> bool:
        return self.domain_splits and self.multivalued_splits and self.restriction_domain_matches

    def __bool__(self) -> bool:
        return self.ok


def _splits_across(space: Subspace, k: Subspace, k_perp: Subspace,
                   cfg: ToleranceConfig) -> float:
    pieces = space.intersect(k, cfg).sum(space.intersect(k_perp, cfg), cfg)
    return space.gap(pieces)


def is_invariant(relation: Relation, k: Subspace,
                 cfg: ToleranceConfig = DEFAULT_TOL) -> InvarianceCheck:
    """Check the three invariance conditions of K for the relation.

    (1) dom T = (dom T ^ K) (+) (dom T ^ K-perp), (2) the same splitting
    for mul T, (3) dom of the restricted part equals dom T ^ K.
    """
    if k.ambient_dim != relation.n:
        raise ValueError("subspace ambient dimension must equal the space dimension")
    k_perp = k.complement(cfg)
    dom = relation.dom(cfg)
    mul = relation.mul(cfg)
    r_dom = _splits_across(dom, k, k_perp, cfg)
    r_mul = _splits_across(mul, k, k_perp, cfg)
    r_restr = relation.restrict(k, cfg).dom(cfg).gap(dom.intersect(k, cfg))
    return InvarianceCheck(
        domain_splits=r_dom < cfg.gap_tol,
        multivalued_splits=r_mul < cfg.gap_tol,
        restriction_domain_matches=r_restr < cfg.gap_tol,
        residuals={"domain": r_dom, "multivalued": r_mul, "restriction_domain": r_restr},
    )


def reduction_gap(relation: Relation, k: Subspace,
                  cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """Gap between T and the orthogonal sum of its restrictions to K, K-perp."""
    part_k = relation.restrict(k, cfg)
    part_p = relation.restrict(k.complement(cfg), cfg)
    return relation.graph.gap(part_k.graph.sum(part_p.graph, cfg))


def is_reducing(relation: Relation, k: Subspace,
                cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    if k.ambient_dim != relation.n:
        raise ValueError("subspace ambient dimension must equal the space dimension")
    return reduction_gap(relation, k, cfg) < cfg.gap_tol


def orthogonal_relation_sum(first: Relation, second: Relation,
                            cfg: ToleranceConfig = DEFAULT_TOL) -> Relation:
    """Orthogonal sum of two relations with orthogonal graphs."""
    if first.n != second.n:
        raise ValueError("space dimensions differ")
    if not first.graph.is_orthogonal_to(second.graph, cfg):
        raise ValueError("graphs are not orthogonal")
    return Relation(first.graph.sum(second.graph, cfg))


def compress(relation: Relation, k: Subspace,
             cfg: ToleranceConfig = DEFAULT_TOL) -> Relation:
    """Rewrite a relation with graph inside K (+) K in coordinates of K."""
    if not doubled(k).contains(relation.graph, cfg):
        raise ValueError("graph is not contained in the doubled subspace")
    q = k.frame
    f = q.conj().T @ relation.F
    g = q.conj().T @ relation.G
    return Relation(Subspace.span(np.vstack([f, g]), cfg, ambient_dim=2 * k.dim, scale=1.0))


def embed(relation: Relation, k: Subspace) -> Relation:
    """Inverse of :func:`compress`: re-embed a relation on K into the ambient space."""
    if relation.n != k.dim:
        raise ValueError("relation space dimension must equal dim K")
    q = k.frame
    frame = np.vstack([q @ relation.F, q @ relation.G])
    return Relation(Subspace(frame))


def adjoint_within(relation: Relation, k: Subspace,
                   cfg: ToleranceConfig = DEFAULT_TOL) -> Relation:
    """Adjoint of a relation with graph inside K (+) K, taken in K.

    The graph is compressed to coordinates of K, the adjoint is computed
    there, and the result is re-embedded; its graph again lies in K (+) K.
    """
    return embed(compress(relation, k, cfg).adjoint(cfg), k)


@dataclass(frozen=True)
class ReductionReport:
    """Certificates attached to a candidate reducing subspace."""

    reducing: bool
    invariant_k: InvarianceCheck
    invariant_k_perp: InvarianceCheck
    adjoint_reduced: bool
    transform_reduced: dict
    parts_split: dict
    adjoint_distribution: dict
    adjoint_sum_identity: bool
    residuals: dict

    @property
    def ok(self) -> bool:
        return (
            self.reducing
            and self.invariant_k.ok
            and self.invariant_k_perp.ok
            and self.adjoint_reduced
            and all(self.transform_reduced.values())
            and all(self.parts_split.values())
            and all(self.adjoint_distribution.values())
            and self.adjoint_sum_identity
        )


def reduction_certificates(relation: Relation, k: Subspace,
                           cfg: ToleranceConfig = DEFAULT_TOL) -> ReductionReport:
    """Verify the full consequences of K reducing the relation.

    For a reducing K this checks that K and its complement are invariant,
    that K reduces the adjoint and the Z transforms at +-i, that all four
    graph parts split orthogonally across K and its complement, that the
    adjoint distributes onto the restricted parts, and that the adjoint of
    the orthogonal part sum equals the orthogonal sum of the within-K
    adjoints.  Failures are reported, never raised.
    """
    if k.ambient_dim != relation.n:
        raise ValueError("subspace ambient dimension must equal the space dimension")
    k_perp = k.complement(cfg)
    residuals: dict = {}

    r_red = reduction_gap(relation, k, cfg)
    residuals["reducing"] = r_red
    reducing = r_red < cfg.gap_tol

    inv_k = is_invariant(relation, k, cfg)
    inv_p = is_invariant(relation, k_perp, cfg)

    adj = relation.adjoint(cfg)
    r_adj = reduction_gap(adj, k, cfg)
    residuals["adjoint_reduced"] = r_adj

    transform_reduced = {}
    for label, zeta in (("+i", 1j), ("-i", -1j)):
        r = reduction_gap(z_transform(relation, zeta, cfg), k, cfg)
        residuals[f"transform_reduced{label}"] = r
        transform_reduced[label] = r < cfg.gap_tol

    part_k = relation.restrict(k, cfg)
    part_p = relation.restrict(k_perp, cfg)
    parts_split = {}
    for name, whole, a, b in (
        ("dom", relation.dom(cfg), part_k.dom(cfg), part_p.dom(cfg)),
        ("ran", relation.ran(cfg), part_k.ran(cfg), part_p.ran(cfg)),
        ("ker", relation.ker(cfg), part_k.ker(cfg), part_p.ker(cfg)),
        ("mul", relation.mul(cfg), part_k.mul(cfg), part_p.mul(cfg)),
    ):
        r = whole.gap(a.sum(b, cfg))
        residuals[f"split_{name}"] = r
        parts_split[name] = r < cfg.gap_tol

    adjoint_distribution = {}
    within_k = within_p = None
    if reducing:
        within_k = adjoint_within(part_k, k, cfg)
        within_p = adjoint_within(part_p, k_perp, cfg)
        for label, within, space in (("k", within_k, k), ("k_perp", within_p, k_perp)):
            r = within.gap(adj.restrict(space, cfg))
            residuals[f"adjoint_distribution_{label}"] = r
            adjoint_distribution[label] = r < cfg.gap_tol
        r_sum = adj.graph.gap(within_k.graph.sum(within_p.graph, cfg))
        residuals["adjoint_sum_identity"] = r_sum
        adjoint_sum_identity = r_sum < cfg.gap_tol
    else:
        # The distribution identities presuppose reduction; report them
        # as failed alongside the reducing verdict.
        adjoint_distribution = {"k": False, "k_perp": False}
        adjoint_sum_identity = False

    return ReductionReport(
        reducing=reducing,
        invariant_k=inv_k,
        invariant_k_perp=inv_p,
        adjoint_reduced=r_adj < cfg.gap_tol,
        transform_reduced=transform_reduced,
        parts_split=parts_split,
        adjoint_distribution=adjoint_distribution,
        adjoint_sum_identity=adjoint_sum_identity,
        residuals=residuals,
    )

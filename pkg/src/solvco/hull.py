"""Lie algebra of the unipotent hull, built on the underlying space of g."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .errors import HullBracketInvalid, JacobiFails
from .lie import AdSData, LieAlgebra, check_jacobi, lower_central_series, unit, vadd


@dataclass
class HullAlgebra:
    underlying: LieAlgebra  # bracket mu on g's input basis
    diagonal: LieAlgebra  # the same bracket in the diagonal basis
    hull_of: str
    embedding: str = "X -> X - ad_s(X)"

    def to_json(self) -> dict:
        out = self.underlying.to_json()
        out["hull_of"] = self.hull_of
        out["embedding"] = self.embedding
        return out


def hull_bracket(g: LieAlgebra, ads: AdSData, x, y):
    """mu(X, Y) = [X, Y] - ad_s(X) Y + ad_s(Y) X."""
    b = g.bracket(x, y)
    ax = la.matvec(ads.ads(x), y)
    ay = la.matvec(ads.ads(y), x)
    return [p - q + r for p, q, r in zip(b, ax, ay)]


def unipotent_hull(g: LieAlgebra, ads: AdSData, name: str = "g") -> HullAlgebra:
    n = g.dim
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            m = hull_bracket(g, ads, unit(n, i), unit(n, j))
            if any(m):
                if not la.is_zero_matrix(ads.ads(m)):
                    raise HullBracketInvalid(
                        f"ad_s does not vanish on mu({g.names[i]}, {g.names[j]})"
                    )
                br[(i, j)] = {k: v for k, v in enumerate(m) if v}
    u = LieAlgebra(g.names, br, g.parameters)
    try:
        check_jacobi(u)
    except JacobiFails as exc:
        raise HullBracketInvalid(f"hull bracket violates Jacobi: {exc}") from None
    if lower_central_series(u)[-1]:
        raise HullBracketInvalid("hull algebra is not nilpotent")
    diag = u.change_basis(ads.diagonal_basis, ads.diagonal_names)
    return HullAlgebra(u, diag, name)


def is_abelian(u: HullAlgebra, basis: str = "diagonal") -> tuple[bool, tuple | None]:
    """True iff mu vanishes; otherwise the first nonvanishing basis pair."""
    alg = u.diagonal if basis == "diagonal" else u.underlying
    for i, j in alg.nonzero_brackets():
        return False, (alg.names[i], alg.names[j])
    return True, None


def splitting_shape(g: LieAlgebra, ads: AdSData, u: HullAlgebra | None = None) -> dict | None:
    """Abelian-hull case: an abelian algebra of dim V acting semisimply on the nilradical."""
    u = u if u is not None else unipotent_hull(g, ads)
    ok, _ = is_abelian(u)
    if not ok:
        return None
    weights = list(ads.weights)
    # V sits inside the zero-weight space; drop that many zero weights
    drop = ads.dimV
    fiber = []
    for w in weights:
        if drop and w.is_zero():
            drop -= 1
            continue
        fiber.append(w)
    return {
        "acting_dim": ads.dimV,
        "fiber_dim": len(ads.nilradical),
        "fiber_weights": sorted((str(w) for w in fiber)),
    }

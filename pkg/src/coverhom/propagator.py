"""Symbolic vanishing propagation for Betti-number flags.

An engine over facts of the form "b_k(S) = 0" for declared spaces S, closed
under a small fixed rule set:

  piece     b_k(Z) = 0 and b_k(X1 u_Z X2) = 0     =>  b_k(X1) = b_k(X2) = 0
  glue      b_k(X1) = b_k(X2) = 0, b_{k-1}(Z) = 0 =>  b_k(X1 u_Z X2) = 0
  duality   closed n-manifold: b_k(S) = 0         =>  b_{n-k}(S) = 0
  tube      codim-2 core: b_{k-2}(V) = 0          =>  b_k(T, C) = 0
  pair LES  two adjacent vanishing term families  =>  the third

The first two are the Mayer-Vietoris implications for a pi_1-injective
splitting; injectivity is a user-asserted hypothesis the engine cannot
check.  Degrees are stored doubled (degree k lives at 2k) so half-integer
middle dimensions of odd-dimensional spaces stay off the integer grid with
no fractions; axiom bands are half-open intervals [lo, hi) on the doubled
scale.  Degrees outside [0, dim] vanish for dimension reasons and are
materialized as "range" facts when a rule consumes them, keeping every
derivation replayable.

derive_singer runs the branched-cover decomposition: glue d interleaved
copies of the two halves M+/M- of a closed n-manifold M along copies of the
separating hypersurface V1, and propagate the off-middle vanishing of M, V1
and V to the result Mhat.  The middle degree (middle two for odd n) is not
derivable from these axioms, and the engine's saturation respects that
ceiling.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .exceptions import MissingAxiomError, TraceReplayError


class Splitting(NamedTuple):
    """whole = left u_interface right."""

    whole: str
    left: str
    interface: str
    right: str


class Tube(NamedTuple):
    """total contains core with codimension 2; complement = total - tube."""

    total: str
    complement: str
    core: str


@dataclass(frozen=True)
class Space:
    name: str
    dim: int | None = None
    closed: bool = False


def rel_subject(total: str, complement: str) -> tuple:
    """Subject key for the relative homology of a pair."""
    return ("rel", total, complement)


def subject_to_str(subject) -> str:
    if isinstance(subject, tuple):
        _, total, comp = subject
        return f"rel:{total}:{comp}"
    return subject


def subject_from_str(s: str):
    if s.startswith("rel:"):
        _, total, comp = s.split(":")
        return rel_subject(total, comp)
    return s


def _subject_label(subject) -> str:
    if isinstance(subject, tuple):
        return f"({subject[1]}, {subject[2]})"
    return f"({subject})"


@dataclass(frozen=True)
class FactEntry:
    """One line of a derivation: a vanishing fact and how it was obtained."""

    index: int
    subject: object
    x: int  # doubled degree
    rule: str
    premises: tuple[int, ...]
    structure: tuple | None = None

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "subject": subject_to_str(self.subject),
            "degree2": self.x,
            "rule": self.rule,
            "premises": list(self.premises),
            "structure": None if self.structure is None else list(self.structure),
        }


def singer_bands(dim: int) -> list[tuple[int, int]]:
    """Doubled-degree bands for "b_k = 0 whenever k != dim/2".

    For odd dim the two bands cover every integer degree, which is the
    correct reading: no integer equals dim/2.

    >>> singer_bands(4)
    [(0, 4), (5, 9)]
    >>> singer_bands(3)
    [(0, 3), (4, 7)]
    """
    return [(0, dim), (dim + 1, 2 * dim + 1)]


def _band_degrees(lo: int, hi: int):
    start = lo if lo % 2 == 0 else lo + 1
    return range(start, hi, 2)


class Propagator:
    """Deterministic saturation engine over vanishing facts.

    Facts live at even doubled degrees; rule sweeps run in a fixed order
    (piece, glue, duality, tube, pair LES) over structures in declaration
    order and degrees ascending, so derivations are reproducible.
    """

    def __init__(self):
        self.spaces: dict[str, Space] = {}
        self.splittings: list[Splitting] = []
        self.tubes: list[Tube] = []
        self.entries: list[FactEntry] = []
        self._index: dict[tuple, int] = {}

    # -- declarations --------------------------------------------------

    def declare_space(self, name: str, dim: int | None = None,
                      closed: bool = False) -> Space:
        if ":" in name or not name:
            raise ValueError(f"bad space name {name!r}")
        if name in self.spaces:
            existing = self.spaces[name]
            if (existing.dim, existing.closed) != (dim, closed):
                raise ValueError(f"space {name!r} redeclared differently")
            return existing
        sp = Space(name, dim, closed)
        self.spaces[name] = sp
        return sp

    def _require_space(self, name: str):
        if name not in self.spaces:
            raise ValueError(f"undeclared space {name!r}")

    def declare_splitting(self, whole: str, left: str, interface: str,
                          right: str) -> Splitting:
        for name in (whole, left, interface, right):
            self._require_space(name)
        sp = Splitting(whole, left, interface, right)
        if sp not in self.splittings:
            self.splittings.append(sp)
        return sp

    def declare_tube(self, total: str, complement: str, core: str) -> Tube:
        for name in (total, complement, core):
            self._require_space(name)
        tube = Tube(total, complement, core)
        if tube not in self.tubes:
            self.tubes.append(tube)
        return tube

    # -- facts ---------------------------------------------------------

    def _dim_of(self, subject) -> int | None:
        if isinstance(subject, tuple):
            return self.spaces[subject[1]].dim
        return self.spaces[subject].dim

    def has_fact(self, subject, x: int) -> bool:
        return (subject, x) in self._index

    def facts_for(self, subject) -> list[int]:
        """Sorted doubled degrees with recorded vanishing facts."""
        return sorted(x for (s, x) in self._index if s == subject)

    def degrees_for(self, subject) -> frozenset:
        """Integer degrees k in [0, dim] with b_k = 0 recorded."""
        dim = self._dim_of(subject)
        out = set()
        for x in self.facts_for(subject):
            if x % 2 == 0 and 0 <= x and (dim is None or x <= 2 * dim):
                out.add(x // 2)
        return frozenset(out)

    def _in_range(self, subject, x: int) -> bool:
        dim = self._dim_of(subject)
        return dim is None or 0 <= x <= 2 * dim

    def _add_fact(self, subject, x: int, rule: str, premises: tuple[int, ...],
                  structure: tuple | None = None) -> int | None:
        key = (subject, x)
        if key in self._index:
            return None
        entry = FactEntry(index=len(self.entries), subject=subject, x=x,
                          rule=rule, premises=premises, structure=structure)
        self.entries.append(entry)
        self._index[key] = entry.index
        return entry.index

    def add_axiom(self, name: str, bands) -> list[int]:
        """Assert vanishing on half-open doubled-degree bands [lo, hi)."""
        self._require_space(name)
        added = []
        for lo, hi in bands:
            lo, hi = int(lo), int(hi)
            if lo >= hi:
                raise ValueError(f"empty band [{lo}, {hi})")
            for x in _band_degrees(lo, hi):
                idx = self._add_fact(name, x, "axiom", ())
                if idx is not None:
                    added.append(idx)
        return added

    # -- premise resolution with range facts -----------------------------

    def _resolve(self, subject, x: int):
        key = (subject, x)
        if key in self._index:
            return ("fact", self._index[key])
        dim = self._dim_of(subject)
        if dim is not None and (x < 0 or x > 2 * dim):
            return ("range", None)
        return None

    def _commit(self, resolved, subject, x: int) -> int:
        kind, idx = resolved
        if kind == "fact":
            return idx
        idx = self._add_fact(subject, x, "range", ())
        assert idx is not None
        return idx

    def _try_rule(self, conclusion_subject, x: int, rule: str,
                  premise_specs, structure) -> int | None:
        """Fire one rule instance if every premise resolves; returns the new
        fact index, or None if premises are unmet or the fact is known.

        Conclusions outside [0, 2*dim] are never recorded (they hold for
        dimension reasons already); bail out before materializing any range
        premises so the trace stays lean and saturation terminates."""
        if self.has_fact(conclusion_subject, x):
            return None
        if not self._in_range(conclusion_subject, x):
            return None
        resolved = []
        for subj, deg in premise_specs:
            r = self._resolve(subj, deg)
            if r is None:
                return None
            resolved.append(r)
        premises = tuple(self._commit(r, subj, deg)
                         for r, (subj, deg) in zip(resolved, premise_specs))
        return self._add_fact(conclusion_subject, x, rule, premises, structure)

    # -- the rules -------------------------------------------------------

    def rule_piece_vanishing(self, splitting: Splitting, x: int) -> list[int]:
        """b_k(whole) = 0 and b_k(interface) = 0 imply both pieces vanish."""
        specs = ((splitting.whole, x), (splitting.interface, x))
        out = []
        for piece in (splitting.left, splitting.right):
            idx = self._try_rule(piece, x, "piece", specs, tuple(splitting))
            if idx is not None:
                out.append(idx)
        return out

    def rule_glue_vanishing(self, splitting: Splitting, x: int) -> list[int]:
        """Both pieces at k and the interface at k-1 imply the union at k."""
        specs = ((splitting.left, x), (splitting.right, x),
                 (splitting.interface, x - 2))
        idx = self._try_rule(splitting.whole, x, "glue", specs, tuple(splitting))
        return [] if idx is None else [idx]

    def rule_duality(self, name: str, x: int) -> list[int]:
        """Mirror b_k(S) = 0 to b_{n-k}(S) = 0 for closed S of dimension n."""
        self._require_space(name)
        sp = self.spaces[name]
        if sp.dim is None:
            raise ValueError(f"duality needs a dimension for {name!r}")
        if not sp.closed:
            raise ValueError(f"duality needs {name!r} flagged closed")
        idx = self._try_rule(name, 2 * sp.dim - x, "duality", ((name, x),),
                             ("space", name))
        return [] if idx is None else [idx]

    def rule_tube(self, tube: Tube, x: int) -> list[int]:
        """Excision and duality for a codim-2 core: H_k(total, complement)
        matches H_{k-2}(core)."""
        idx = self._try_rule(rel_subject(tube.total, tube.complement), x,
                             "tube", ((tube.core, x - 4),), tuple(tube))
        return [] if idx is None else [idx]

    def rule_pair_les(self, tube: Tube, x: int, variant: str = "sub") -> list[int]:
        """Long exact sequence of (total, complement): from vanishing of two
        term families at adjacent degrees, conclude the third.

        variant "sub":   rel at k+1 and total at k  => complement at k
        variant "total": complement and rel at k    => total at k
        variant "rel":   total at k, complement k-1 => rel at k
        """
        rel = rel_subject(tube.total, tube.complement)
        if variant == "sub":
            concl, specs = tube.complement, ((rel, x + 2), (tube.total, x))
        elif variant == "total":
            concl, specs = tube.total, ((tube.complement, x), (rel, x))
        elif variant == "rel":
            concl, specs = rel, ((tube.total, x), (tube.complement, x - 2))
        else:
            raise ValueError(f"unknown pair LES variant {variant!r}")
        idx = self._try_rule(concl, x, f"pair_{variant}", specs, tuple(tube))
        return [] if idx is None else [idx]

    # -- saturation ------------------------------------------------------

    def _window(self):
        xs = [2 * sp.dim for sp in self.spaces.values() if sp.dim is not None]
        xs += [e.x for e in self.entries]
        hi = max(xs, default=0) + 4
        lo = min(0, min(xs, default=0)) - 4
        return range(lo + (lo % 2), hi + 1, 2)

    def saturate(self, max_rounds: int = 10_000) -> int:
        """Apply every rule everywhere until nothing new appears; returns the
        number of facts derived."""
        added_total = 0
        for _ in range(max_rounds):
            before = len(self.entries)
            window = self._window()
            for sp in self.splittings:
                for x in window:
                    self.rule_piece_vanishing(sp, x)
            for sp in self.splittings:
                for x in window:
                    self.rule_glue_vanishing(sp, x)
            for name, space in list(self.spaces.items()):
                if space.closed and space.dim is not None:
                    for x in self.facts_for(name):
                        self.rule_duality(name, x)
            for tube in self.tubes:
                for x in window:
                    self.rule_tube(tube, x)
            for variant in ("sub", "total", "rel"):
                for tube in self.tubes:
                    for x in window:
                        self.rule_pair_les(tube, x, variant)
            added = len(self.entries) - before
            added_total += added
            if added == 0:
                return added_total
        raise RuntimeError("saturation did not stabilize")

    def export_trace(self, meta: dict | None = None) -> "DerivationTrace":
        return DerivationTrace(spaces=dict(self.spaces),
                               splittings=tuple(self.splittings),
                               tubes=tuple(self.tubes),
                               entries=tuple(self.entries),
                               meta=dict(meta or {}))


@dataclass(frozen=True)
class DerivationTrace:
    """A finished derivation: declarations plus the ordered fact entries."""

    spaces: dict
    splittings: tuple
    tubes: tuple
    entries: tuple
    meta: dict = field(default_factory=dict)

    def conclusions(self, name: str) -> frozenset:
        """Integer degrees k with b_k = 0 established for the named space."""
        dim = self.spaces[name].dim
        out = set()
        for e in self.entries:
            if e.subject == name and e.rule != "range" and e.x % 2 == 0 \
                    and 0 <= e.x and (dim is None or e.x <= 2 * dim):
                out.add(e.x // 2)
        return frozenset(out)

    def replay(self) -> None:
        """Re-check every entry against the declarations; raises
        TraceReplayError on the first violation."""
        seen: dict[tuple, int] = {}
        for pos, e in enumerate(self.entries):
            if e.index != pos:
                raise TraceReplayError(f"entry {pos} has index {e.index}")
            try:
                self._replay_entry(e, seen)
            except TraceReplayError:
                raise
            except Exception as exc:
                raise TraceReplayError(f"entry {pos}: {exc}") from exc
            seen[(e.subject, e.x)] = pos

    def _space(self, name: str) -> Space:
        if name not in self.spaces:
            raise TraceReplayError(f"undeclared space {name!r}")
        return self.spaces[name]

    def _replay_entry(self, e: FactEntry, seen: dict) -> None:
        def premise_subjects():
            out = []
            for idx in e.premises:
                if not 0 <= idx < e.index:
                    raise TraceReplayError(
                        f"entry {e.index} cites future or invalid premise {idx}")
                p = self.entries[idx]
                out.append((p.subject, p.x))
            return out

        if e.rule == "axiom":
            if e.premises:
                raise TraceReplayError(f"axiom entry {e.index} has premises")
            return
        if e.rule == "range":
            dim = self._trace_dim(e.subject)
            if dim is None or 0 <= e.x <= 2 * dim:
                raise TraceReplayError(
                    f"range entry {e.index} is not outside [0, 2*dim]")
            return
        got = premise_subjects()
        if e.rule == "piece":
            sp = Splitting(*e.structure)
            if sp not in self.splittings:
                raise TraceReplayError(f"entry {e.index}: unknown splitting {sp}")
            if e.subject not in (sp.left, sp.right):
                raise TraceReplayError(
                    f"entry {e.index}: piece conclusion is not a piece")
            want = [(sp.whole, e.x), (sp.interface, e.x)]
        elif e.rule == "glue":
            sp = Splitting(*e.structure)
            if sp not in self.splittings:
                raise TraceReplayError(f"entry {e.index}: unknown splitting {sp}")
            if e.subject != sp.whole:
                raise TraceReplayError(
                    f"entry {e.index}: glue conclusion is not the whole")
            want = [(sp.left, e.x), (sp.right, e.x), (sp.interface, e.x - 2)]
        elif e.rule == "duality":
            sp = self._space(e.subject)
            if sp.dim is None or not sp.closed:
                raise TraceReplayError(
                    f"entry {e.index}: duality needs a closed space with dimension")
            want = [(e.subject, 2 * sp.dim - e.x)]
        elif e.rule == "tube":
            tube = Tube(*e.structure)
            if tube not in self.tubes:
                raise TraceReplayError(f"entry {e.index}: unknown tube {tube}")
            if e.subject != rel_subject(tube.total, tube.complement):
                raise TraceReplayError(
                    f"entry {e.index}: tube conclusion is not the pair")
            want = [(tube.core, e.x - 4)]
        elif e.rule in ("pair_sub", "pair_total", "pair_rel"):
            tube = Tube(*e.structure)
            if tube not in self.tubes:
                raise TraceReplayError(f"entry {e.index}: unknown tube {tube}")
            rel = rel_subject(tube.total, tube.complement)
            if e.rule == "pair_sub":
                if e.subject != tube.complement:
                    raise TraceReplayError(f"entry {e.index}: wrong conclusion")
                want = [(rel, e.x + 2), (tube.total, e.x)]
            elif e.rule == "pair_total":
                if e.subject != tube.total:
                    raise TraceReplayError(f"entry {e.index}: wrong conclusion")
                want = [(tube.complement, e.x), (rel, e.x)]
            else:
                if e.subject != rel:
                    raise TraceReplayError(f"entry {e.index}: wrong conclusion")
                want = [(tube.total, e.x), (tube.complement, e.x - 2)]
        else:
            raise TraceReplayError(f"entry {e.index}: unknown rule {e.rule!r}")
        if got != want:
            raise TraceReplayError(
                f"entry {e.index} ({e.rule}): premises {got} do not match "
                f"required {want}")

    def _trace_dim(self, subject) -> int | None:
        if isinstance(subject, tuple):
            return self._space(subject[1]).dim
        return self._space(subject).dim

    def format_proof(self) -> str:
        lines = []
        for e in self.entries:
            assert e.x % 2 == 0
            head = f"[{e.index:3d}] b_{e.x // 2}{_subject_label(e.subject)} = 0"
            if e.rule in ("axiom", "range"):
                lines.append(f"{head}  ({e.rule})")
            else:
                cited = ", ".join(f"[{i}]" for i in e.premises)
                lines.append(f"{head}  by {e.rule} from {cited}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "spaces": [{"name": s.name, "dim": s.dim, "closed": s.closed}
                       for s in self.spaces.values()],
            "splittings": [list(sp) for sp in self.splittings],
            "tubes": [list(t) for t in self.tubes],
            "entries": [e.to_json() for e in self.entries],
            "meta": dict(self.meta),
        }

    @classmethod
    def from_json(cls, doc: dict) -> "DerivationTrace":
        try:
            spaces = {s["name"]: Space(s["name"], s.get("dim"),
                                       bool(s.get("closed", False)))
                      for s in doc["spaces"]}
            splittings = tuple(Splitting(*sp) for sp in doc["splittings"])
            tubes = tuple(Tube(*t) for t in doc["tubes"])
            entries = tuple(
                FactEntry(index=int(e["index"]),
                          subject=subject_from_str(e["subject"]),
                          x=int(e["degree2"]), rule=e["rule"],
                          premises=tuple(int(i) for i in e["premises"]),
                          structure=None if e.get("structure") is None
                          else tuple(e["structure"]))
                for e in doc["entries"])
        except (KeyError, TypeError, ValueError) as exc:
            raise TraceReplayError(f"malformed trace document: {exc}") from exc
        return cls(spaces=spaces, splittings=splittings, tubes=tubes,
                   entries=entries, meta=dict(doc.get("meta", {})))


# -- the branched-cover decomposition ---------------------------------------


def gt_decomposition(d: int) -> list[Splitting]:
    """Gluing tree for the d-fold construction: start from M_1 = M-, repeat
    M_{i+1} = M_i u_{V1+} M+ u_{V1-} M-, and close up Mhat = M+ u_{V1} M_d.

    Each three-space step is returned as two binary splittings through the
    intermediate space W_i.

    >>> gt_decomposition(1)
    [Splitting(whole='Mhat', left='M+', interface='V1', right='M-')]
    >>> len(gt_decomposition(4))
    7
    """
    if d < 1:
        raise ValueError("cover degree must be >= 1")
    if d == 1:
        return [Splitting("Mhat", "M+", "V1", "M-")]
    out = []
    current = "M-"  # M_1
    for i in range(1, d):
        w, nxt = f"W_{i}", f"M_{i + 1}"
        out.append(Splitting(w, current, "V1+", "M+"))
        out.append(Splitting(nxt, w, "V1-", "M-"))
        current = nxt
    out.append(Splitting("Mhat", "M+", "V1", current))
    return out


_SINGER_AXIOM_SPACES = ("M", "V1", "V")


def derive_singer(n: int, d: int, axioms=None) -> DerivationTrace:
    """Propagate off-middle vanishing through the d-fold branched-cover
    decomposition of a closed n-manifold.

    Default axioms assert the off-middle vanishing bands for M (dimension n),
    the separating hypersurface V1 (dimension n-1) and the branching locus V
    (dimension n-2).  Returns the saturated trace; conclusions("Mhat") is the
    derived vanishing set, which for even n is every degree except n/2 and
    for odd n every degree except the middle two.
    """
    if n < 2:
        raise ValueError("need dimension n >= 2")
    if d < 1:
        raise ValueError("cover degree must be >= 1")
    prop = Propagator()
    prop.declare_space("M", n, closed=True)
    prop.declare_space("M+", n)
    prop.declare_space("M-", n)
    prop.declare_space("V1", n - 1, closed=True)
    prop.declare_space("V1+", n - 1)
    prop.declare_space("V1-", n - 1)
    prop.declare_space("V", n - 2, closed=True)
    prop.declare_space("Mhat", n, closed=True)
    tree = gt_decomposition(d)
    for sp in tree:
        for name in (sp.whole, sp.left, sp.right):
            if name not in prop.spaces:
                prop.declare_space(name, n)
    prop.declare_splitting("M", "M+", "V1", "M-")
    prop.declare_splitting("V1", "V1+", "V", "V1-")
    for sp in tree:
        prop.declare_splitting(*sp)

    if axioms is None:
        for name in _SINGER_AXIOM_SPACES:
            prop.add_axiom(name, singer_bands(prop.spaces[name].dim))
    else:
        covered = set()
        for ax in axioms:
            name, bands = ax["space"], ax["bands"]
            if name not in prop.spaces:
                raise MissingAxiomError(f"axiom names unknown space {name!r}")
            prop.add_axiom(name, bands)
            covered.add(name)
        missing = [s for s in _SINGER_AXIOM_SPACES if s not in covered]
        if missing:
            raise MissingAxiomError(
                f"axioms must cover {', '.join(_SINGER_AXIOM_SPACES)}; "
                f"missing {', '.join(missing)}")

    prop.saturate()
    return prop.export_trace(meta={"n": n, "d": d})

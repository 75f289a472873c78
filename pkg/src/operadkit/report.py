from dataclasses import dataclass, field

from .order import order_key

MAX_STORED_WITNESSES = 200


def jsonable(x):
    """Render elements, terms and fractions as JSON-friendly values."""
    from fractions import Fraction

    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (tuple, list)):
        return [jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    to_json = getattr(x, "to_json", None)
    if to_json is not None:
        return to_json()
    return repr(x)


@dataclass
class AxiomReport:
    """Failing instances of a family of laws, plus coverage counts.

    ``checked`` counts instances actually evaluated; ``unchecked`` counts
    instances that exist within the horizon but were skipped (sampling,
    missing table entries, arity overflow).  A report passes iff it has no
    failures; it is *complete* iff additionally nothing was left unchecked.
    """

    subject: str = ""
    horizon: int | None = None
    checked: int = 0
    unchecked: int = 0
    failures: int = 0
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return self.failures == 0

    @property
    def complete(self):
        return self.unchecked == 0

    @property
    def status(self):
        if self.failures:
            return "fail"
        return "pass" if self.unchecked == 0 else "partial"

    def __bool__(self):
        return self.passed

    def fail(self, axiom, witness):
        self.failures += 1
        if len(self.witnesses) < MAX_STORED_WITNESSES:
            self.witnesses.append((axiom, witness))

    def expect(self, ok, axiom, witness):
        self.checked += 1
        if not ok:
            self.fail(axiom, witness)
        return ok

    def skip(self, n=1):
        self.unchecked += n

    def merge(self, other):
        self.checked += other.checked
        self.unchecked += other.unchecked
        for axiom, witness in other.witnesses:
            if len(self.witnesses) < MAX_STORED_WITNESSES:
                self.witnesses.append((axiom, witness))
        self.failures += other.failures
        self.notes.extend(other.notes)
        return self

    def axioms_failed(self):
        return sorted({a for a, _ in self.witnesses})

    def sorted_witnesses(self):
        return sorted(self.witnesses, key=lambda aw: (aw[0], order_key(_freeze(aw[1]))))

    def to_json(self):
        return {
            "subject": self.subject,
            "status": self.status,
            "horizon": self.horizon,
            "checked": self.checked,
            "unchecked": self.unchecked,
            "failures": self.failures,
            "witnesses": [
                {"axiom": a, "instance": jsonable(w)} for a, w in self.sorted_witnesses()
            ],
            "notes": list(self.notes),
        }

    def summary(self):
        return (
            f"{self.subject or 'report'}: {self.status} "
            f"(checked={self.checked}, unchecked={self.unchecked}, failures={self.failures})"
        )


def _freeze(w):
    if isinstance(w, list):
        return tuple(_freeze(x) for x in w)
    if isinstance(w, tuple):
        return tuple(_freeze(x) for x in w)
    if isinstance(w, dict):
        return tuple(sorted((str(k), _freeze(v)) for k, v in w.items()))
    try:
        order_key(w)
        return w
    except TypeError:
        return repr(w)

"""Per-query work counters.

Each query call owns one ``WorkCounters`` instance; structures only ever
increment the counters handed to them, so concurrent read-only queries never
share mutable state.  The counters are the portable cost model used by the
benchmark harness (wall time is reported but never asserted on).
"""

from dataclasses import dataclass


@dataclass
class WorkCounters:
    stab_nodes_visited: int = 0
    pl_comparisons: int = 0
    structures_queried: int = 0
    cells_located: int = 0

    def reset(self):
        self.stab_nodes_visited = 0
        self.pl_comparisons = 0
        self.structures_queried = 0
        self.cells_located = 0

    @property
    def total(self):
        """Scalar work measure: point-location comparisons plus stabbing nodes."""
        return self.stab_nodes_visited + self.pl_comparisons

    def snapshot(self):
        return (
            self.stab_nodes_visited,
            self.pl_comparisons,
            self.structures_queried,
            self.cells_located,
        )

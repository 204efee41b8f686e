"""Python access to the BIRS pipeline."""

import json

from ._core import (
    BirsError,
    Pipeline as _Pipeline,
    canonical_spf,
    entity_count,
    is_subclass_of,
    parse_date_roundtrip,
    taxonomy_edges,
)

__all__ = [
    "BirsError",
    "Pipeline",
    "canonical_spf",
    "entity_count",
    "is_subclass_of",
    "parse_date_roundtrip",
    "taxonomy_edges",
]


class Pipeline(_Pipeline):
    def request(self, op, payload=None):
        """Run a service op in process and return the decoded payload."""
        return json.loads(self.request_json(op, json.dumps(payload or {})))

"""Loading and saving of instances, orders and relations as JSON."""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import InfoAlgebra
from .errors import MalformedInstance
from .instances import (make_lattice_valued, make_multivariate,
                        make_set_algebra, make_string_algebra)
from .order import FiniteLattice, FinitePoset
from .partition import Partition, Universe
from .separoid import CIRelation


def load_poset(data: dict) -> FinitePoset:
    try:
        return FinitePoset.from_json(data)
    except (KeyError, TypeError, IndexError) as exc:
        raise MalformedInstance(f"bad order description: {exc}") from exc


def load_lattice(data: dict) -> FiniteLattice:
    return FiniteLattice.from_poset(load_poset(data))


def _load_abstract(data: dict, require_e4) -> InfoAlgebra:
    domains = load_poset(data["domains"])
    extract_by_name = data["extract"]
    try:
        extract = [extract_by_name[name] for name in domains.names]
    except KeyError as exc:
        raise MalformedInstance(f"extract table missing domain {exc}") from exc
    flag = data.get("require_e4", True) if require_e4 is None else require_e4
    return InfoAlgebra(data["elements"], data["combine"], data["unit"],
                       data["null"], domains, extract, require_e4=flag)


def load_instance(data: dict, require_e4=None) -> InfoAlgebra:
    """Build an instance from its JSON description.

    ``require_e4``, when not None, overrides whatever the description says.
    """
    if not isinstance(data, dict) or "kind" not in data:
        raise MalformedInstance("instance description needs a 'kind' field")
    kind = data["kind"]
    try:
        if kind == "abstract":
            return _load_abstract(data, require_e4)
        if kind == "string":
            a = make_string_algebra(data["alphabet_size"], data["max_len"])
        elif kind == "multivariate":
            a = make_multivariate(data["frames"])
        elif kind == "set_algebra":
            universe = Universe(data["universe"])
            parts = [Partition.from_json(universe, p)
                     for p in data["partitions"]]
            a = make_set_algebra(universe, parts,
                                 data.get("elements", "all_saturated"),
                                 data.get("partition_names"))
        elif kind == "lattice_valued":
            universe = Universe(data["universe"])
            parts = [Partition.from_json(universe, p)
                     for p in data["partitions"]]
            a = make_lattice_valued(universe, parts,
                                    load_lattice(data["values"]),
                                    data.get("partition_names"))
        else:
            raise MalformedInstance(f"unknown instance kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInstance(f"bad {kind} description: {exc}") from exc
    if require_e4 is not None and require_e4 != a.require_e4:
        a = InfoAlgebra(a.names, a.combine, a.unit, a.null, a.domains,
                        a.extract, require_e4=require_e4)
    return a


def load_instance_file(path, require_e4=None) -> InfoAlgebra:
    with open(path) as fh:
        data = json.load(fh)
    return load_instance(data, require_e4)


def load_json_file(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def load_ci_relation(data: dict, order: FinitePoset) -> CIRelation:
    try:
        return CIRelation.from_json(order, data)
    except (KeyError, TypeError) as exc:
        raise MalformedInstance(f"bad relation description: {exc}") from exc


def dump_instance(a: InfoAlgebra, path) -> None:
    Path(path).write_text(json.dumps(a.to_json(), indent=1) + "\n")

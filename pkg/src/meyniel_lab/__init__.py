"""Abelian Cayley graphs with large cop number: constructions, structural
checks, an exact cops-and-robbers solver, and cop-number certificates."""

from .cayley import CayleyGraph, GeneratorSet, Graph, build_graph, make_generator_set
from .certify import CopCertificate, certify
from .constructions import Instance, build_gamma1, build_gamma2, build_gamma3, build_instance, greedy_generating_set
from .freeness import FreenessReport, check_freeness
from .groups import AbelianGroup, FiniteField, GroupElement, field_make, make_cyclic, make_product

__version__ = "0.1.0"


def load_schema(name: str) -> dict:
    """Shipped JSON schema by stem: certificate, check, metadata, transcript, table."""
    import json
    from importlib.resources import files

    return json.loads(files(__name__).joinpath("schemas", f"{name}.schema.json").read_text())

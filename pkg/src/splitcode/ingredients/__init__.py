"""Classical ingredients, seeded searches, and the on-disk ingredient cache."""
from .cache import IngredientCache, resolve_cache_dir
from .classical import sts, td, weight_gdd
from .fields import gf
from .mols import mols_from_field, mols_ladder, mols_product
from .provider import IngredientRequest, gdd_provider, splitting_design_provider
from .search import hill_climb_gdd, search_cyclic_splitting_design

__all__ = [
    "IngredientCache", "IngredientRequest", "gdd_provider", "gf", "hill_climb_gdd",
    "mols_from_field", "mols_ladder", "mols_product", "resolve_cache_dir",
    "search_cyclic_splitting_design", "splitting_design_provider", "sts", "td", "weight_gdd",
]

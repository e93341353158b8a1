from .model import (
    CatalogGraph,
    CatalogTree,
    CatalogVertex,
    PathQuery,
    QueryAnswer,
    SubgraphQuery,
    assign_z_ranges,
    heavy_path_decompose,
)

__all__ = [
    "CatalogGraph",
    "CatalogTree",
    "CatalogVertex",
    "PathQuery",
    "QueryAnswer",
    "SubgraphQuery",
    "assign_z_ranges",
    "heavy_path_decompose",
]

from .surfaces import (
    EXAMPLES,
    plane,
    cylinder,
    sphere_chart,
    tilted_cylinder,
    cone,
    revolution_cylinder,
    example_surface,
)


__all__ = [
    "EXAMPLES",
    "plane",
    "cylinder",
    "sphere_chart",
    "tilted_cylinder",
    "cone",
    "revolution_cylinder",
    "example_surface",
]

from . import dictionaryio
from .basicio import (
    IMAGINARY_TOLERANCE,
    MESH_FORMATS,
    to_jsonable,
    surface_to_dict,
    surface_from_dict,
    save_surface,
    load_surface,
    load_dictionary,
    save_report,
    save_phi_csv,
    save_profile_csv,
    save_phi_json,
    save_profile_json,
    mesh_faces,
    export_mesh,
)
from .run_parameters import Run_parameters, default_dictionary, canonical_form


__all__ = [
    "dictionaryio",
    "IMAGINARY_TOLERANCE",
    "MESH_FORMATS",
    "to_jsonable",
    "surface_to_dict",
    "surface_from_dict",
    "save_surface",
    "load_surface",
    "load_dictionary",
    "save_report",
    "save_phi_csv",
    "save_profile_csv",
    "save_phi_json",
    "save_profile_json",
    "mesh_faces",
    "export_mesh",
    "Run_parameters",
    "default_dictionary",
    "canonical_form",
]

"""
Code generation: target profiles and the source emitter.
"""

from qrunes.services.codegen.emitter import (
    TargetSourceText,
    autoimport_enabled,
    codegen,
)
from qrunes.services.codegen.profiles import (
    BUILTIN_PROFILES,
    CPP_PROFILE,
    PYTHON_PROFILE,
    available_profiles,
    get_profile,
    load_profile_file,
    profile_for_language,
)

__all__ = [
    "codegen",
    "autoimport_enabled",
    "TargetSourceText",
    "BUILTIN_PROFILES",
    "CPP_PROFILE",
    "PYTHON_PROFILE",
    "available_profiles",
    "get_profile",
    "load_profile_file",
    "profile_for_language",
]

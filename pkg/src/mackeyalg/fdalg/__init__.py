"""Radicals, resolutions, Ext and bilinear forms for finite-rank algebras."""
from .battery import BatteryConfig, BatteryRecord, gorenstein_battery, run_battery, test_modules
from .forms import FormSpace, sigma_is_bimodule_map, symmetric_form_space, unit_retraction_exists
from .integral import (AbelianGroup, IntModule, IntResolution, ReesCheck, from_modp, int_ext,
                       int_regular, one_dimensional_module, rees_reduction_check)
from .modules import (LeftModule, Resolution, ext_dim, hom_dim, is_self_injective,
                      quotient_module, regular_module, submodule, top_module)
from .radical import (ideal_power_dims, is_two_sided_ideal, largest_nilpotent_ideal_bruteforce,
                      radical, radical_bruteforce, socle_left, validate_radical)

__all__ = [
    "AbelianGroup", "BatteryConfig", "BatteryRecord", "FormSpace", "IntModule", "IntResolution",
    "LeftModule", "ReesCheck", "Resolution", "ext_dim", "from_modp", "gorenstein_battery",
    "hom_dim", "ideal_power_dims", "int_ext", "int_regular", "is_self_injective",
    "is_two_sided_ideal", "largest_nilpotent_ideal_bruteforce", "one_dimensional_module",
    "quotient_module", "radical", "radical_bruteforce", "rees_reduction_check", "regular_module",
    "run_battery", "sigma_is_bimodule_map", "socle_left", "submodule", "symmetric_form_space",
    "test_modules", "top_module", "unit_retraction_exists", "validate_radical",
]

"""Exact calculator for families Seiberg-Witten invariants of Kähler families."""
from .ring import (Backend, GradedClass, Ring, RingSpec, RingSpecError, graded_component,
                   make_ring, mul, point_ring, projective_space, surface_ring,
                   truncated_polynomial_ring)
from .charclass import (BundleClass, TotalClass, bundle_from_total, dual, jet_total_class,
                        line_bundle, segre_of, sym_power, sym_tensor, tensor_line_chern,
                        tensor_line_segre, tensor_product, trivial, whitney_sum)
from .fswcore import (GammaResult, KahlerFamilyData, Route, SWValue, fsw_general, fsw_terms,
                      gamma, gamma_closed, gamma_pushforward, gamma_triple_sum, gbinom,
                      pushforward_power, recursion_residual, sw_rewritten, sw_unparametrised)
from .families import (BlowupBundleData, BlowupMode, BlowupSpec, CrossCheckRow, FibreProductSpec,
                       ProjectivisationSpec, blowup_bundle_data, blowup_fsw_delta,
                       blowup_fsw_specialised, family_cross_check, family_form,
                       fibre_product_fsw, kahler_data, projectivisation_fsw,
                       projectivisation_fsw_expanded)

__version__ = "0.1.0"

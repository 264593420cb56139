"""Exact and approximate ground states of trapped 1D bosons with contact
interactions.

The heavy lifting lives in the compiled extension ``bogolab._core``; this
package re-exports its public names.
"""

from bogolab._core import (
    BogoliubovReport,
    BogoliubovSpectrum,
    ComparisonRow,
    CondensateOrbital,
    ExactSummary,
    FockBasis,
    GpEnergyParts,
    InteractionTensor,
    ModelParams,
    QuadraticForm,
    QuadratureRule,
    RunConfig,
    SparseOperator,
    SpectrumResult,
    apply_annihilate,
    apply_create,
    apply_pair_string,
    assemble_hamiltonian,
    assemble_interaction,
    assemble_trap,
    bogoliubov_report,
    build_quadratic,
    build_quadrature,
    condensate_fraction,
    coupling_grid,
    density_profile,
    diagonalize_quadratic,
    fluctuation_basis,
    fock_dimension,
    format_number,
    gp_energy,
    gp_energy_parts,
    gp_gradient,
    interaction_tensor,
    mode_energy,
    one_body_density_matrix,
    orbital_value,
    parse_config,
    rows_to_csv,
    rows_to_json,
    run_bogoliubov,
    run_compare,
    run_condensate,
    run_exact,
    solve_condensate,
    solve_ground,
    solve_lowest_k,
)

__all__ = [name for name in dir() if not name.startswith("_")]

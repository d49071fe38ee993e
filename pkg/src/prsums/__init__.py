"""prsums: exponential sums with primitive-root phases.

Exact evaluation of S_N(a, b1 g1^x + ... ) mod p, averages over all
primitive roots in one slot, incomplete-sum completion, and verification
suites for every explicit identity and bound the machinery rests on.
"""

from .averaged import (
    AvgResult,
    AvgSpec,
    ChainRow,
    chain_majorants,
    check_chain,
    eval_avg_direct,
    eval_avg_u_param,
)
from .completion import (
    CompletionReport,
    IntervalSpec,
    final_bound_check,
    geometric_tail_bound,
    harmonic_factor,
    incomplete_completed,
    incomplete_direct,
    indicator,
)
from .expsum import (
    RootTable,
    SumSpec,
    build_root_table,
    eval_mordell_sum,
    eval_prefix_sums,
    eval_sum,
    root_table,
)
from .kernels import backend as kernel_backend
from .moments import (
    LambdaContext,
    TdCount,
    count_solutions,
    fourth_moment,
    fourth_moment_chain,
    lambda_context,
    orthogonality_identity,
    solution_count_ratio,
)
from .numtheory import (
    FactoredInteger,
    PrimeContext,
    enumerate_primitive_roots,
    euler_phi,
    factorize,
    is_prime,
    is_primitive_root,
    mobius,
    pow_mod,
    prime_context,
    sigma_int,
    sigma_r,
)
from .reports import (
    FitResult,
    ScanRecord,
    emit,
    fit_exponent,
    make_record,
    mordell_rhs,
    phi_ratio,
    read_records,
    reference_power,
    stoneham_ratio,
)

__version__ = "0.1.0"

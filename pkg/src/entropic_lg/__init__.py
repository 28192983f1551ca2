"""Tsallis-entropic Leggett-Garg tests for quantum work fluctuations."""
from .entropy import (
    alpha_log, binary_entropy, conditional_entropy, joint_entropy, quaternary_entropy,
    tsallis_entropy,
)
from .errors import DomainError, ParameterError, ValidationError
from .inefficiency import (
    InefficiencyReport, delta, distort_pair, distort_single, entropy_pair_closed,
    entropy_single_closed, lg_inefficient, ratio,
)
from .kernels import BACKEND
from .lg import (
    LGReport, ViolationDomain, argmax_theta, c_tilde_curve, domain_extension, lg_conditional_form,
    lg_report, violation_domain,
)
from .macrorealism import HiddenVariableModel, fuzz, joint_from_model, lg_check, random_model
from .quantum import (
    ProtocolSpec, gibbs_distribution, pair_joint_measured, protocol_joints, skip_joint,
    skip_joint_literal, transition_matrix,
)
from .systems import SystemFamily, make_protocol, qubit_unitary, qutrit_unitary

__version__ = "0.1.0"

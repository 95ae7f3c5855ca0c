"""Finite models of information algebras, set algebras and their
conditional-independence structure, with exhaustive verification at desk
scale."""

from .algebra import (IdealCompletion, InfoAlgebra, ideal_completion,
                      ideal_extraction_lemma, is_commutative, subalgebra_at,
                      support_lemma_check, support_set, verify_axioms)
from .embedding import (AtomSet, EmbeddingReport, GeneratingSet, TupleSystem,
                        boolean_checks, build_embedding, build_tuple_system,
                        ci_uniqueness_check, classify_locally_atomic,
                        compute_atoms, distributive_precondition,
                        element_level_ci_check, finite_boolean_representation,
                        finite_distributive_representation,
                        finite_prime_ideal_check, full_generating_set,
                        generating_set, induced_ci, is_order_generating,
                        is_strongly_order_generating,
                        relative_atom_lemma_check, verify_comb_extr_properties)
from .errors import (BoundExceeded, InfalgError, MalformedInstance,
                     PreconditionFailed, UniverseMismatch)
from .instances import (make_lattice_valued, make_multivariate,
                        make_set_algebra, make_string_algebra, random_instance)
from .order import (FiniteLattice, FinitePoset, OrderIdeal, chain,
                    check_join_semilattice, diamond_m3, enumerate_ideals,
                    is_boolean, is_distributive, is_modular,
                    meet_irreducibles, pentagon_n5, powerset_lattice)
from .partition import (Partition, Universe, all_partitions, commute,
                        cond_independent, independent, partition_join,
                        partition_meet, refines)
from .report import Check, Report
from .separoid import (CIRelation, check_basic, check_qseparoid,
                       check_separoid, check_strong_separoid, dawid_relation,
                       lattice_relation, partition_ci_relation,
                       partition_lattice, pullback_relation)

__version__ = "0.1.0"

"""pchar: exact character theory of finite p-groups.

Construct groups, compute exact character tables over cyclotomic fields,
decompose products of irreducible characters, and run executable verifiers
for the statements about products of faithful characters.
"""

from .config import Config
from .cyclotomic import (
    Cyclotomic,
    cyc_add,
    cyc_conj,
    cyc_inv,
    cyc_is_rational_integer,
    cyc_mul,
    cyc_neg,
    cyc_root,
    lemma_2_1_check,
    lemma_2_1_random_suite,
)
from .groups import (
    ConjugacyData,
    FiniteGroup,
    Subgroup,
    center,
    check_group_axioms,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    function_power_semidirect,
    group_from_perm_generators,
    group_from_table,
    group_prime,
    heisenberg_extraspecial,
    is_nilpotent,
    normal_subgroups_between,
    subgroup,
)
from .groupfile import PermGenerators, group_to_table_text, load_group_file, parse_group_text
from .characters import (
    Character,
    CharacterTable,
    Decomposition,
    char_center,
    character_table,
    conjugate,
    decompose,
    eta,
    induce,
    inner_product,
    is_faithful,
    kernel,
    product,
    restrict,
    vanishes_outside,
)
from .verifiers import (
    EtaSurvey,
    VerificationReport,
    conjecture_scan,
    degree_is_permissible,
    faithful_pair_survey,
    permissible_degrees,
    verify_conjecture_scan,
    verify_lemma_2_2,
    verify_lemma_4_1,
    verify_lemma_5_1,
    verify_main_lemma,
    verify_theorem_a,
    verify_theorem_b,
)
from .constructions import (
    ExampleSpec,
    IndexedLinearFamily,
    build_example,
    cross_check_methods,
    verify_example_via_orbits,
    verify_example_via_table,
)
from .descriptors import parse_descriptor
from .errors import (
    GroupFileError,
    NotACharacterError,
    ResourceLimitError,
    TableConsistencyError,
)

__version__ = "0.1.0"

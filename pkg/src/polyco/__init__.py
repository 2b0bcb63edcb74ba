"""String rewriting on monoid presentations: reduction graphs, decreasing
diagrams, coherent completions and low-dimensional homology."""

from .core import (EMPTY, ParseError, Polygraph, Rule, Word, all_words,
                   parse_polygraph, parse_word, serialize_polygraph,
                   word_str)
from .engine import (ExplorationBudget, IllComposed, Path, ReductionGraph,
                     RewriteStep, TerminationReport, TruncatedRegion,
                     Unreachable, ZigzagPath, classify_termination,
                     distance, enumerate_steps, exchange_swap, explore,
                     format_step, normal_forms, normalize_zigzag,
                     parse_step, quasi_normal_forms, support, zigzag,
                     zigzags_equal, INCONCLUSIVE, NOT_QUASI_TERMINATING,
                     QUASI_TERMINATING_NOT_TERMINATING, TERMINATING)
from .branchings import (ASPHERICAL, CRITICAL, OVERLAPPING, PEIFFER,
                         Branching, LocalBranching, classify_branching,
                         critical_branchings, local_branchings,
                         match_critical)
from .labelling import (FinitePosetOrder, LabelMultiset, Labelling,
                        LabellingError, MissingLabel, NaturalsOrder,
                        NotQuasiNormalForm, ReachabilityOrder, filter_word,
                        format_qnf_map, label_path, label_step,
                        measure_branching, measure_path, measure_word,
                        multiset_less, parse_label_table, parse_qnf_map,
                        validate_qnf_map)
from .decreasing import (DecreasingDiagram, MeasureError, SearchExhausted,
                         StrictDiagram, Violation, check_context_closability,
                         check_context_compatibility, check_decreasing,
                         check_peiffer_decreasing, check_star0_compatibility,
                         check_strict, complete_branching_strictly,
                         contexts_up_to, find_decreasing, peiffer_variants)
from .loops import (Loop, LoopClass, LoopEnumeration, NotALoop,
                    canonical_rotation, enumerate_elementary_loops,
                    is_context_minimal, is_elementary,
                    is_minimal_for_composition, rotate_conjugators,
                    strip_whiskers)
from .expressions import (Atom, CONFLUENCE, LOOP, MissingLoopClass,
                          ThreeCell, ThreeCellExpression, check_boundary,
                          concat, conjugate, contract_loop,
                          identity_expression, invert)
from .completion import (CERTIFIED, CoherentPresentation, ConfluenceRecord,
                         PARTIAL, build_completion, fill_parallel_sphere,
                         fill_zigzag_sphere, format_extension,
                         format_zigzag, parse_extension, parse_sphere,
                         parse_zigzag)
from .homology import (ChainComplexZ, HomologyGroup, HomologyResult,
                       abelianize, finiteness_report, homology,
                       letter_counts, rule_occurrences, smith_normal_form)
from . import fixtures

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

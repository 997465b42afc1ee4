"""Assembly-level program similarity metrics and corpus grouping studies."""

from .asm_parser import (AssemblyProgram, BasicBlock, Instruction, ParserConfig,
                         is_branch, linear_blocks, parse_assembly,
                         segment_basic_blocks)
from .corpus import (APPLICATION_SPECIFIC, PROGRAMMER_SPECIFIC, TD_LABEL,
                     CorpusGrid, GroupingKind, GroupingScheme, ProgramEntry,
                     StudyReport, StudySuite, Subset, build_grid, build_suite,
                     build_universes, coprime_strides, cross_dataset_mean,
                     default_strides, enumerate_subsets, group_mean,
                     load_datasets, load_manifest, normalize, pairwise_values,
                     run_study, subset_mean, td_aggregate, totally_different)
from .errors import (AsmSimError, DuplicateIdError, EmptyProgramError,
                     IncompleteGridError, InputError, InvalidStrideError,
                     ManifestError, NormalizationError, ParseError,
                     PatternMismatchError, ToolError)
from .features import (PatternSet, PatternUniverse, ProgramFeatures,
                       build_universe, compute_features, existence_set,
                       extract_ngrams, features_for_program, features_to_dict,
                       frequency_vector, to_boolean_vector)
from .metrics import (METRIC_ORDER, MetricKind, SimilarityValue, cosine,
                      euclidean_pattern_distance, jaccard, measure)

__version__ = "0.1.0"

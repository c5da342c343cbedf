"""Self-labeling grey-box classifier for semi-supervised tabular data."""

from .amending import (AMENDING_KINDS, CONF, NONE, RST, WeightedEnlargedSet,
                       apply_amending, balance_weights, conf_weights,
                       rst_weights)
from .data import (Attribute, DataError, Dataset, EmptyDatasetError, NOMINAL,
                   NUMERIC, RowError, SchemaError, SemiSupervisedSplit,
                   load_dataset, make_grid_split, make_split, normalize_numeric,
                   save_csv)
from .experiment import (ExperimentConfig, ExperimentReport, cell_seed,
                         run_experiment, run_grid, write_cells_csv,
                         write_report_json)
from .forest import ForestConfig, TrainedForest, predict, predict_proba, train_forest
from .metrics import (SimplicityParams, accuracy, confusion_matrix, kappa,
                      relative_growth, simplicity, utility)
from .pipeline import (SlgbConfig, SlgbModel, bundle_to_json, explain, fit,
                       load_surrogate, predict_slgb, save_bundle)
from .rough import (HeomParams, SimilarityStructure, attribute_information_gain,
                    build_similarity_structure, heom, pairwise_heom,
                    region_memberships)
from .rulemodel import (Condition, Rule, RuleModel, count_rules, firing_rule,
                        model_from_json, model_to_json, predict_rules,
                        render_model, render_rule)
from .rules import train_c45, train_part, train_ripper
from .stats import (friedman_test, holm_correction, read_score_csv,
                    test_battery, wilcoxon_signed_rank)
from .synth import (GENERATORS, make_blobs, make_mixed, make_rings, make_suite,
                    make_xor_grid)

__version__ = "0.1.0"

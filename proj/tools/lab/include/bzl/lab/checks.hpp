#pragma once

#include "bzl/lab/suites.hpp"

namespace bzl::lab {

// One function per acceptance criterion, in criterion order.
CheckResult check_dimension(const ExperimentConfig &cfg);
CheckResult check_zelditch(const ExperimentConfig &cfg);
CheckResult check_berezin_expansion(const ExperimentConfig &cfg);
CheckResult check_star_axioms(const ExperimentConfig &cfg);
CheckResult check_central(const ExperimentConfig &cfg);
CheckResult check_cross_engine(const ExperimentConfig &cfg);
CheckResult check_norm_chain(const ExperimentConfig &cfg);
CheckResult check_decay(const ExperimentConfig &cfg);
CheckResult check_kernel_identities(const ExperimentConfig &cfg);
CheckResult check_classifying(const ExperimentConfig &cfg);
CheckResult check_kodaira(const ExperimentConfig &cfg);

CheckResult check_goldens(const ExperimentConfig &cfg);

} // namespace bzl::lab

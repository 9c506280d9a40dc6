#pragma once

#include "ecr/bayes.hpp"
#include "ecr/claim.hpp"
#include "ecr/claim_store.hpp"
#include "ecr/embedding.hpp"
#include "ecr/error.hpp"
#include "ecr/hypothesis.hpp"
#include "ecr/posterior.hpp"
#include "ecr/ranking.hpp"
#include "ecr/resolver.hpp"
#include "ecr/run_config.hpp"
#include "ecr/selection.hpp"
#include "ecr/trigger.hpp"
#include "ecr/vector_index.hpp"

#include "ecr/harness/ablation.hpp"
#include "ecr/harness/dataset.hpp"
#include "ecr/harness/dataset_io.hpp"
#include "ecr/harness/metrics.hpp"
#include "ecr/harness/parallel.hpp"
#include "ecr/harness/policies.hpp"
#include "ecr/harness/report.hpp"
#include "ecr/harness/rng.hpp"
#include "ecr/harness/sanity.hpp"

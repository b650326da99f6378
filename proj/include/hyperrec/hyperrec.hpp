// hyperrec.hpp - umbrella header
#pragma once

#include "hyperrec/baselines.hpp"
#include "hyperrec/classifier.hpp"
#include "hyperrec/cliques.hpp"
#include "hyperrec/features.hpp"
#include "hyperrec/filtering.hpp"
#include "hyperrec/hypergraph.hpp"
#include "hyperrec/io.hpp"
#include "hyperrec/metrics.hpp"
#include "hyperrec/projected_graph.hpp"
#include "hyperrec/random.hpp"
#include "hyperrec/search.hpp"
#include "hyperrec/split.hpp"
#include "hyperrec/synthetic.hpp"
#include "hyperrec/types.hpp"

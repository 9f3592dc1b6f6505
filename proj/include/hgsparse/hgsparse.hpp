#pragma once

#include "hgsparse/random.hpp"
#include "hgsparse/hypergraph.hpp"
#include "hgsparse/linalg.hpp"
#include "hgsparse/graph_sparsify.hpp"
#include "hgsparse/overestimate.hpp"
#include "hgsparse/hypergraph_sparsify.hpp"
#include "hgsparse/verify.hpp"
#include "hgsparse/cuts.hpp"
#include "hgsparse/hgr_io.hpp"

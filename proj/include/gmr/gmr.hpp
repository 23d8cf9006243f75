#pragma once

#include <gmr/bench.hpp>
#include <gmr/csp.hpp>
#include <gmr/embed.hpp>
#include <gmr/error.hpp>
#include <gmr/exact.hpp>
#include <gmr/graph.hpp>
#include <gmr/graph_io.hpp>
#include <gmr/grid_embed.hpp>
#include <gmr/inference.hpp>
#include <gmr/labels.hpp>
#include <gmr/lift.hpp>
#include <gmr/minor.hpp>
#include <gmr/minor_search.hpp>
#include <gmr/model.hpp>
#include <gmr/pipeline.hpp>
#include <gmr/planarity.hpp>
#include <gmr/treewidth.hpp>
#include <gmr/uai.hpp>

#pragma once

#include "blanketlab/blanket.hpp"
#include "blanketlab/error.hpp"
#include "blanketlab/graph.hpp"
#include "blanketlab/graph_io.hpp"
#include "blanketlab/node_set.hpp"
#include "blanketlab/projection.hpp"
#include "blanketlab/relations.hpp"
#include "blanketlab/scm.hpp"
#include "blanketlab/separation.hpp"
#include "blanketlab/stability.hpp"
#include "blanketlab/validation.hpp"

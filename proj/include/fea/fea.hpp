#pragma once

#include "fea/core/automaton.hpp"
#include "fea/core/determinize.hpp"
#include "fea/core/product.hpp"
#include "fea/core/scc.hpp"
#include "fea/core/trim.hpp"
#include "fea/energy.hpp"
#include "fea/error.hpp"
#include "fea/io.hpp"
#include "fea/lang_cost.hpp"
#include "fea/linlen.hpp"
#include "fea/nondet.hpp"
#include "fea/oracle.hpp"
#include "fea/pair_cost.hpp"
#include "fea/similarity.hpp"
#include "fea/spectral.hpp"

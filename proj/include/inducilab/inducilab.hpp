#pragma once

#include "abelian.hpp"
#include "bigcount.hpp"
#include "blowup.hpp"
#include "bounds.hpp"
#include "cayley.hpp"
#include "certify.hpp"
#include "embed.hpp"
#include "errors.hpp"
#include "extremal.hpp"
#include "graph.hpp"
#include "graph6.hpp"
#include "interval.hpp"
#include "isomorphism.hpp"
#include "json_io.hpp"
#include "rng.hpp"
#include "suite.hpp"
#include "vertex_set.hpp"

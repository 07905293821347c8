#pragma once

#include "amenable/constructions.hpp"
#include "amenable/errors.hpp"
#include "amenable/folner.hpp"
#include "amenable/group.hpp"
#include "amenable/parallel.hpp"
#include "amenable/permutation.hpp"
#include "amenable/random.hpp"
#include "amenable/rational.hpp"
#include "amenable/report.hpp"
#include "amenable/sets.hpp"
#include "amenable/structures.hpp"
#include "amenable/suite.hpp"
#include "amenable/symbolic.hpp"

#pragma once

#include "entwit/core.hpp"
#include "entwit/criteria.hpp"
#include "entwit/distill.hpp"
#include "entwit/qstate.hpp"
#include "entwit/search.hpp"
#include "entwit/witness.hpp"
#include "entwit/zoo.hpp"

#pragma once

#include "adaptive_search/core_search.hpp"
#include "adaptive_search/dataset.hpp"
#include "adaptive_search/engine.hpp"
#include "adaptive_search/lru_cache.hpp"
#include "adaptive_search/selector.hpp"

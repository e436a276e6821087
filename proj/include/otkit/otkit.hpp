#pragma once

// Umbrella header: the whole pipeline in one include.

#include "otkit/cli.hpp"
#include "otkit/error.hpp"
#include "otkit/eval.hpp"
#include "otkit/generate.hpp"
#include "otkit/grammar.hpp"
#include "otkit/pattern.hpp"
#include "otkit/render.hpp"
#include "otkit/script.hpp"

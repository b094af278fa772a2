#pragma once

// Everything except the HTTP transport and the CLI.
#include "spacer/corpus.hpp"
#include "spacer/embed.hpp"
#include "spacer/error.hpp"
#include "spacer/generator.hpp"
#include "spacer/graph.hpp"
#include "spacer/literature.hpp"
#include "spacer/logicgraph.hpp"
#include "spacer/parallel.hpp"
#include "spacer/pipeline.hpp"
#include "spacer/prompts.hpp"
#include "spacer/rng.hpp"
#include "spacer/scoring.hpp"
#include "spacer/search.hpp"
#include "spacer/synthgen.hpp"
#include "spacer/validation.hpp"

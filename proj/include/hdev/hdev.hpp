#pragma once

#include "hdev/citestats.hpp"
#include "hdev/corpus.hpp"
#include "hdev/deviation.hpp"
#include "hdev/error.hpp"
#include "hdev/fitting.hpp"
#include "hdev/golden.hpp"
#include "hdev/indices.hpp"
#include "hdev/quantiles.hpp"
#include "hdev/records.hpp"
#include "hdev/report.hpp"
#include "hdev/synth.hpp"

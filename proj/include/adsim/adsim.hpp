// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <adsim/attack_engine.hpp>
#include <adsim/attack_stats.hpp>
#include <adsim/config.hpp>
#include <adsim/dust.hpp>
#include <adsim/error.hpp>
#include <adsim/experiment.hpp>
#include <adsim/propagation.hpp>
#include <adsim/rng.hpp>
#include <adsim/scenario.hpp>
#include <adsim/table.hpp>
#include <adsim/units.hpp>

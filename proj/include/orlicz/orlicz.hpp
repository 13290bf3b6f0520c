#pragma once

#include "orlicz/errors.hpp"
#include "orlicz/interp.hpp"
#include "orlicz/json_io.hpp"
#include "orlicz/orlicz_space.hpp"
#include "orlicz/qbfs.hpp"
#include "orlicz/rng.hpp"
#include "orlicz/space.hpp"
#include "orlicz/vecmeasure.hpp"
#include "orlicz/verify.hpp"
#include "orlicz/young.hpp"

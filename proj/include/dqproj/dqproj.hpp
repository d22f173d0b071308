#pragma once

#include "dqproj/bench.hpp"
#include "dqproj/csv.hpp"
#include "dqproj/datagen.hpp"
#include "dqproj/dual_number.hpp"
#include "dqproj/dual_quaternion.hpp"
#include "dqproj/error.hpp"
#include "dqproj/oracle.hpp"
#include "dqproj/polyroots.hpp"
#include "dqproj/pose.hpp"
#include "dqproj/projection.hpp"
#include "dqproj/quaternion.hpp"
#include "dqproj/rng.hpp"
#include "dqproj/rotation.hpp"
#include "dqproj/text.hpp"
#include "dqproj/tolerance.hpp"
#include "dqproj/trajectory_io.hpp"

#pragma once

#include "nukc/brute.hpp"
#include "nukc/cgk.hpp"
#include "nukc/ellipsoid.hpp"
#include "nukc/errors.hpp"
#include "nukc/firefighter.hpp"
#include "nukc/generators.hpp"
#include "nukc/hs.hpp"
#include "nukc/instance.hpp"
#include "nukc/io.hpp"
#include "nukc/metric.hpp"
#include "nukc/oracle.hpp"
#include "nukc/outer.hpp"
#include "nukc/wellsep.hpp"
#include "nukc/harness.hpp"

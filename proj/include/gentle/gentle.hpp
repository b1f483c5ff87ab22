#pragma once

#include "gentle/classification.hpp"
#include "gentle/core.hpp"
#include "gentle/dsl.hpp"
#include "gentle/generate.hpp"
#include "gentle/normalization.hpp"
#include "gentle/report.hpp"
#include "gentle/threads.hpp"
#include "gentle/transforms.hpp"

#pragma once

#include "neutral/abelian.hpp"
#include "neutral/autgroup.hpp"
#include "neutral/criteria.hpp"
#include "neutral/geometry.hpp"
#include "neutral/rep.hpp"
#include "neutral/smith.hpp"
#include "neutral/verify.hpp"

#pragma once

#include "matsuo/scalar.hpp"
#include "matsuo/group.hpp"
#include "matsuo/fischer_space.hpp"
#include "matsuo/linalg.hpp"
#include "matsuo/algebra.hpp"
#include "matsuo/closure.hpp"
#include "matsuo/axial.hpp"
#include "matsuo/flip.hpp"
#include "matsuo/classify.hpp"

#pragma once

#include "klein/census.hpp"
#include "klein/epimorphism.hpp"
#include "klein/fixedpoints.hpp"
#include "klein/oracle.hpp"
#include "klein/rational.hpp"
#include "klein/signature.hpp"

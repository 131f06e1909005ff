#pragma once

#include "formes/arith.hpp"
#include "formes/core_forms.hpp"
#include "formes/enumeration.hpp"
#include "formes/indefinite.hpp"
#include "formes/oracle.hpp"
#include "formes/tables.hpp"

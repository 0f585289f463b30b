#pragma once

#include "desattack/error.hpp"
#include "desattack/automaton.hpp"
#include "desattack/supervision.hpp"
#include "desattack/estimation.hpp"
#include "desattack/opacity.hpp"
#include "desattack/attack.hpp"
#include "desattack/aas.hpp"
#include "desattack/classification.hpp"
#include "desattack/synthesis.hpp"
#include "desattack/oracle.hpp"
#include "desattack/io.hpp"
#include "desattack/dot.hpp"

#pragma once

#include "nfst/abi.hpp"
#include "nfst/auction.hpp"
#include "nfst/balances.hpp"
#include "nfst/demo.hpp"
#include "nfst/engine.hpp"
#include "nfst/event.hpp"
#include "nfst/gas_model.hpp"
#include "nfst/gas_sweep.hpp"
#include "nfst/keccak.hpp"
#include "nfst/ledger.hpp"
#include "nfst/runner.hpp"
#include "nfst/scenario.hpp"
#include "nfst/types.hpp"

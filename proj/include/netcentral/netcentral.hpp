#pragma once

#include "netcentral/error.hpp"
#include "netcentral/network.hpp"
#include "netcentral/document.hpp"
#include "netcentral/centrality.hpp"
#include "netcentral/oracle.hpp"
#include "netcentral/analytics.hpp"
#include "netcentral/scenario.hpp"
#include "netcentral/report.hpp"
#include "netcentral/tusrs.hpp"

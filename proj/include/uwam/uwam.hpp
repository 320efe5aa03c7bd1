#pragma once

// Single-carrier underwater-acoustic random-access modem: transmit chain,
// multiuser multipath/Doppler channel simulator, and an interference-
// cancelling receiver with CAF packet detection, sparse frequency-domain
// channel estimation and turbo equalization.

#include "uwam/channel.hpp"
#include "uwam/chanest.hpp"
#include "uwam/context.hpp"
#include "uwam/conv_code.hpp"
#include "uwam/crc16.hpp"
#include "uwam/dcd.hpp"
#include "uwam/demod.hpp"
#include "uwam/detector.hpp"
#include "uwam/doppler.hpp"
#include "uwam/equalizer.hpp"
#include "uwam/fft.hpp"
#include "uwam/frame.hpp"
#include "uwam/gold.hpp"
#include "uwam/interleaver.hpp"
#include "uwam/params.hpp"
#include "uwam/prng.hpp"
#include "uwam/receiver.hpp"
#include "uwam/regen.hpp"
#include "uwam/rrc.hpp"
#include "uwam/scenario.hpp"
#include "uwam/scoring.hpp"
#include "uwam/signal_io.hpp"
#include "uwam/turbo.hpp"

// Copyright 2026 The SolBugSmith Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The bundled bug pool. Templates are Solidity 0.5; `{N}` is the per-bug
// counter, `{C}` the counter of the shared context declarations.

#include "solbugsmith/bug_pool.h"

namespace solbugsmith {
namespace {

struct SnippetDef {
  const char* id;
  BugType type;
  SnippetForm form;
  const char* text;
  const char* context;
};

constexpr SnippetForm kFn = SnippetForm::kFunctionDefinition;
constexpr SnippetForm kStmt = SnippetForm::kSimpleStatement;
constexpr SnippetForm kBlock = SnippetForm::kNonFunctionBlock;

const SnippetDef kSnippets[] = {
    // Re-entrancy: ether leaves through call.value before the books are
    // updated.
    {"reentrancy-withdraw-amount", BugType::kReentrancy, kFn,
     R"(function bug_reEntrancy{N}(uint256 _Amt) public {
    require(balances_re_ent{C}[msg.sender] >= _Amt);
    (bool success, ) = msg.sender.call.value(_Amt)("");
    require(success);
    balances_re_ent{C}[msg.sender] -= _Amt;
}
function deposit_re_ent{N}() public payable {
    balances_re_ent{C}[msg.sender] += msg.value;
})",
     "mapping(address => uint256) balances_re_ent{C};"},
    {"reentrancy-withdraw-all", BugType::kReentrancy, kFn,
     R"(function withdraw_balances_re_ent{N}() public {
    (bool success, ) = msg.sender.call.value(balances_re_ent{C}[msg.sender])("");
    if (success)
        balances_re_ent{C}[msg.sender] = 0;
}
function deposit_balances_re_ent{N}() public payable {
    balances_re_ent{C}[msg.sender] += msg.value;
})",
     "mapping(address => uint256) balances_re_ent{C};"},
    {"reentrancy-claim-reward", BugType::kReentrancy, kFn,
     R"(function claimReward_re_ent{N}() public {
    require(redeemableEther_re_ent{C}[msg.sender] > 0);
    uint transferValue_re_ent = redeemableEther_re_ent{C}[msg.sender];
    msg.sender.call.value(transferValue_re_ent)("");
    redeemableEther_re_ent{C}[msg.sender] = 0;
}
function fundReward_re_ent{N}() public payable {
    redeemableEther_re_ent{C}[msg.sender] += msg.value;
})",
     "mapping(address => uint256) redeemableEther_re_ent{C};"},
    {"reentrancy-jackpot", BugType::kReentrancy, kFn,
     R"(function buyTicket_re_ent{N}() public {
    (bool success, ) = lastPlayer_re_ent{C}.call.value(jackpot_re_ent{C})("");
    if (!success)
        revert();
    lastPlayer_re_ent{C} = msg.sender;
    jackpot_re_ent{C} = address(this).balance;
})",
     "address payable lastPlayer_re_ent{C};\nuint256 jackpot_re_ent{C};"},
    {"reentrancy-counter", BugType::kReentrancy, kFn,
     R"(function callme_re_ent{N}() public {
    require(counter_re_ent{C} <= 5);
    (bool success, ) = msg.sender.call.value(10 ether)("");
    if (!success) {
        revert();
    }
    counter_re_ent{C} += 1;
})",
     "uint256 counter_re_ent{C} = 0;"},
    {"reentrancy-user-balance", BugType::kReentrancy, kFn,
     R"(function withdrawBalance_re_ent{N}() public {
    (bool success, ) = msg.sender.call.value(userBalance_re_ent{C}[msg.sender])("");
    if (!success) {
        revert();
    }
    userBalance_re_ent{C}[msg.sender] = 0;
}
function depositUser_re_ent{N}() public payable {
    userBalance_re_ent{C}[msg.sender] += msg.value;
})",
     "mapping(address => uint256) userBalance_re_ent{C};"},

    // Timestamp dependency: control flow keyed on the miner-set clock.
    {"timestamp-deadline", BugType::kTimestampDependency, kFn,
     R"(function bug_tmstmp{N}() public returns (bool) {
    return block.timestamp >= 1546300;
})",
     ""},
    {"timestamp-state-var", BugType::kTimestampDependency, kFn,
     "uint256 bugv_tmstmp{N} = block.timestamp;", ""},
    {"timestamp-play-exact", BugType::kTimestampDependency, kFn,
     R"(function play_tmstmp{N}(uint startTime) public {
    if (startTime + (5 * 1 days) == block.timestamp) {
        winner_tmstmp{C} = msg.sender;
    }
})",
     "address winner_tmstmp{C};"},
    {"timestamp-play-local", BugType::kTimestampDependency, kFn,
     R"(function play_tmstmp_v{N}(uint startTime) public {
    uint _vtime = block.timestamp;
    if (startTime + (5 * 1 days) == _vtime) {
        winner_tmstmp_v{C} = msg.sender;
    }
})",
     "address winner_tmstmp_v{C};"},
    {"timestamp-local", BugType::kTimestampDependency, kStmt,
     "uint256 bugv_tmstmp_l{N} = block.timestamp;", ""},
    {"timestamp-parity", BugType::kTimestampDependency, kBlock,
     R"(if (block.timestamp % 2 == 0) {
    uint256 bugv_tmstmp_even{N} = block.timestamp;
})",
     ""},

    // Unchecked send: ether handed to any caller without authorization.
    {"unchecked-send-fixed", BugType::kUncheckedSend, kFn,
     R"(function bug_unchkSend{N}() payable public {
    msg.sender.transfer(1 ether);
})",
     ""},
    {"unchecked-send-small", BugType::kUncheckedSend, kFn,
     R"(function bug_unchkSend_small{N}() public {
    msg.sender.transfer(10 finney);
})",
     ""},
    {"unchecked-send-receiver", BugType::kUncheckedSend, kFn,
     R"(function sendTo_unchk{N}(address payable _receiver) public {
    _receiver.transfer(0.5 ether);
})",
     ""},
    {"unchecked-send-amount", BugType::kUncheckedSend, kFn,
     R"(function payout_unchk{N}(uint256 _amount) public {
    require(_amount <= address(this).balance);
    msg.sender.transfer(_amount);
})",
     ""},
    {"unchecked-send-all", BugType::kUncheckedSend, kFn,
     R"(function refundAll_unchk{N}() public payable {
    msg.sender.transfer(address(this).balance);
})",
     ""},

    // Unhandled exception: the boolean result of send/call is dropped.
    {"unhandled-send-callee", BugType::kUnhandledException, kFn,
     R"(function unhandledsend{N}() public {
    callee{C}.send(5 ether);
})",
     "address payable callee{C} = msg.sender;"},
    {"unhandled-send-sender", BugType::kUnhandledException, kFn,
     R"(function bug_unhandledSend{N}() public payable {
    msg.sender.send(1 ether);
})",
     ""},
    {"unhandled-send-amount", BugType::kUnhandledException, kFn,
     R"(function cash_unhandled{N}(uint256 amount) public {
    msg.sender.send(amount);
})",
     ""},
    {"unhandled-call", BugType::kUnhandledException, kFn,
     R"(function callnotchecked_unchk{N}(address payable callee) public {
    callee.call.value(2 ether)("");
})",
     ""},
    {"unhandled-send-stmt", BugType::kUnhandledException, kStmt,
     "msg.sender.send(0);", ""},
    {"unhandled-send-block", BugType::kUnhandledException, kBlock,
     R"(if (address(this).balance > 1 ether) {
    msg.sender.send(1 wei);
})",
     ""},

    // Transaction ordering dependence: payout depends on which of two
    // transactions is mined first.
    {"tod-winner", BugType::kTOD, kFn,
     R"(function setWinner_tod{N}() public {
    winner_tod{C} = msg.sender;
}
function getReward_tod{N}() payable public {
    winner_tod{C}.transfer(msg.value);
})",
     "address payable winner_tod{C};"},
    {"tod-guess", BugType::kTOD, kFn,
     R"(function play_TOD{N}(bytes32 guess) public {
    if (keccak256(abi.encode(guess)) == keccak256(abi.encode("hello"))) {
        winner_TOD{C} = msg.sender;
    }
}
function getReward_TOD{N}() payable public {
    winner_TOD{C}.transfer(msg.value);
})",
     "address payable winner_TOD{C};"},
    {"tod-reward", BugType::kTOD, kFn,
     R"(function setReward_TOD{N}() public payable {
    require(!claimed_TOD{C});
    require(msg.sender == owner_TOD{C});
    owner_TOD{C}.transfer(reward_TOD{C});
    reward_TOD{C} = msg.value;
}
function claimReward_TOD{N}(uint256 submission) public {
    require(!claimed_TOD{C});
    require(submission < 10);
    msg.sender.transfer(reward_TOD{C});
    claimed_TOD{C} = true;
})",
     "bool claimed_TOD{C} = false;\naddress payable owner_TOD{C} = msg.sender;\n"
     "uint256 reward_TOD{C};"},
    {"tod-price", BugType::kTOD, kFn,
     R"(function setPrice_TOD{N}(uint256 newPrice) public {
    require(msg.sender == seller_TOD{C});
    price_TOD{C} = newPrice;
}
function buy_TOD{N}() public payable {
    require(msg.value >= price_TOD{C});
    seller_TOD{C}.transfer(msg.value);
})",
     "uint256 price_TOD{C} = 1 finney;\naddress payable seller_TOD{C} = msg.sender;"},
    {"tod-bounty", BugType::kTOD, kFn,
     R"(function submitAnswer_TOD{N}(string memory answer) public {
    if (keccak256(abi.encodePacked(answer)) == keccak256(abi.encodePacked("42"))) {
        solver_TOD{C} = msg.sender;
    }
}
function payBounty_TOD{N}() public payable {
    solver_TOD{C}.transfer(msg.value);
})",
     "address payable solver_TOD{C};"},

    // Integer overflow / underflow.
    {"overflow-lock-time", BugType::kIntegerOverflowUnderflow, kFn,
     R"(function incrLockTime_intou{N}(uint _sec) public {
    lockTime_intou{C}[msg.sender] += _sec;
})",
     "mapping(address => uint) public lockTime_intou{C};"},
    {"underflow-constant", BugType::kIntegerOverflowUnderflow, kFn,
     R"(function bug_intou{N}() public returns (uint8) {
    uint8 vundflw = 0;
    vundflw = vundflw - 10;
    return vundflw;
})",
     ""},
    {"underflow-transfer", BugType::kIntegerOverflowUnderflow, kFn,
     R"(function transfer_intou{N}(address _to, uint _value) public returns (bool) {
    require(balances_intou{C}[msg.sender] - _value >= 0);
    balances_intou{C}[msg.sender] -= _value;
    balances_intou{C}[_to] += _value;
    return true;
})",
     "mapping(address => uint) balances_intou{C};"},
    {"overflow-bonus", BugType::kIntegerOverflowUnderflow, kFn,
     R"(function addBonus_intou{N}(uint8 bonus) public pure returns (uint8) {
    uint8 base = 250;
    return base + bonus;
})",
     ""},
    {"overflow-local", BugType::kIntegerOverflowUnderflow, kStmt,
     "uint8 bugv_intou{N} = uint8(block.number % 256) + 250;", ""},
    {"underflow-block", BugType::kIntegerOverflowUnderflow, kBlock,
     R"({
    uint8 vundflw_intou{N} = 0;
    vundflw_intou{N} = vundflw_intou{N} - 10;
})",
     ""},

    // tx.origin used for authorization.
    {"txorigin-drain", BugType::kTxOrigin, kFn,
     R"(function bug_txorigin{N}(address payable _recipient) public {
    require(tx.origin == owner_txorigin{C});
    _recipient.transfer(address(this).balance);
})",
     "address owner_txorigin{C} = msg.sender;"},
    {"txorigin-withdraw", BugType::kTxOrigin, kFn,
     R"(function withdrawAll_txorigin{N}(address payable _recipient, uint _amt) public {
    require(tx.origin == owner_txorigin{C});
    _recipient.transfer(_amt);
})",
     "address owner_txorigin{C} = msg.sender;"},
    {"txorigin-sendto", BugType::kTxOrigin, kFn,
     R"(function sendto_txorigin{N}(address payable receiver, uint amount) public {
    require (tx.origin == owner_txorigin{C});
    receiver.transfer(amount);
})",
     "address owner_txorigin{C} = msg.sender;"},
    {"txorigin-call", BugType::kTxOrigin, kFn,
     R"(function transferTo_txorigin{N}(address to, uint amount) public {
    require(tx.origin == owner_txorigin{C});
    (bool success, ) = to.call.value(amount)("");
    require(success);
})",
     "address owner_txorigin{C} = msg.sender;"},
    {"txorigin-ownership", BugType::kTxOrigin, kFn,
     R"(function claimOwnership_txorigin{N}(address newOwner) public {
    require(tx.origin == owner_txorigin{C});
    owner_txorigin{C} = newOwner;
})",
     "address owner_txorigin{C} = msg.sender;"},
};

BugPool BuildDefaultPool() {
  BugPool pool;
  for (const SnippetDef& d : kSnippets) {
    pool.AddSnippet(BugSnippet{d.id, d.type, d.form, d.text, d.context});
  }
  pool.AddTransform({"txorigin-owner-check", BugType::kTxOrigin,
                     {"msg", ".", "sender", "==", "owner"},
                     {"tx", ".", "origin", "==", "owner"}});
  pool.AddTransform({"overflow-bytes32", BugType::kIntegerOverflowUnderflow,
                     {"bytes32"}, {"bytes8"}});
  pool.AddTransform({"overflow-uint256", BugType::kIntegerOverflowUnderflow,
                     {"uint256"}, {"uint8"}});
  pool.AddWeakening({"unhandled-send-guard", BugType::kUnhandledException,
                     {"send"}});
  return pool;
}

}  // namespace

const BugPool& DefaultPool() {
  static const BugPool pool = BuildDefaultPool();
  return pool;
}

}  // namespace solbugsmith
